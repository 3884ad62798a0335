//! Module invariants: norm axioms on random vectors, oracle equalities
//! between independent computation routes, monotonicity laws, and the
//! structural claims of the roots-of-unity configurations.

mod common;

use std::cmp::Ordering;

use normlab_core::free::examples::{classify_lip_exlf, exlf_space, LipClassification};
use normlab_core::free::{free_norm_dual, free_norm_primal, lip_constant, FreeVector, LipFunction};
use normlab_core::num::{pow10_neg, rat, rat_int, ComplexRat, Rat, Value};
use normlab_core::optim::{
    conserves, lp_solve, min_cost_flow, Arc, FlowNetwork, LinearProgram, LpResult, Relation, Sense,
};
use normlab_core::quantities::{
    diam_and_separation, l1_equivalence_constant, lower_l1_complex, lower_l1_real, staged_report,
    EquivalenceConstant, Generator, StagedTag, VectorFamily,
};
use normlab_core::spaces::{
    chain_norm, norm, sign_sup_norm, value_sum, NormModel, PhiSpec, Vector,
};
use normlab_core::subset::{
    best_subset_bruteforce, halfplane_select, is_circular_interval, roots_witness,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Rat {
    pow10_neg(30)
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn rat_vec(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(small_rat(), len)
}

/// `||a v|| == |a| ||v||` and `||u + v|| <= ||u|| + ||v||`, exactly for the
/// exact forms and within certified enclosures otherwise.
fn check_norm_axioms(model: &NormModel, u: &Vector, v: &Vector, scale: &Rat) {
    let t = tol();
    let nu = norm(model, u, &t).unwrap();
    let nv = norm(model, v, &t).unwrap();
    let scaled = norm(model, &u.scale(&ComplexRat::from_real(scale.clone())), &t).unwrap();
    let expected = nu.scale(&scale.abs());
    match (&scaled, &expected) {
        (Value::Rational(a), Value::Rational(b)) => assert_eq!(a, b),
        (Value::SqrtRational(a), Value::SqrtRational(b)) => assert_eq!(a, b),
        _ => {
            let gap = scaled.enclosure(&t).sub(&expected.enclosure(&t)).abs();
            assert!(*gap.hi() <= pow10_neg(20), "homogeneity gap {gap:?}");
        }
    }
    let sum_norm = norm(model, &u.add(v), &t).unwrap();
    let bound = value_sum(&[nu, nv], &t);
    let ok = matches!(
        sum_norm.cmp_certified(&bound, &t),
        Some(Ordering::Less) | Some(Ordering::Equal)
    ) || *sum_norm.enclosure(&t).lo() <= *bound.enclosure(&t).hi();
    assert!(ok, "triangle inequality failed: {sum_norm} vs {bound}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn l1_real_norm_axioms(u in rat_vec(4), v in rat_vec(4), a in small_rat()) {
        let model = NormModel::L1Real(4);
        check_norm_axioms(&model, &Vector::real(u), &Vector::real(v), &a);
    }

    #[test]
    fn linf_real_norm_axioms(u in rat_vec(4), v in rat_vec(4), a in small_rat()) {
        let model = NormModel::LinfReal(4);
        check_norm_axioms(&model, &Vector::real(u), &Vector::real(v), &a);
    }

    #[test]
    fn chain_norm_axioms_and_sandwich(
        u in rat_vec(5),
        v in rat_vec(5),
        a in small_rat(),
    ) {
        let model = NormModel::ChainNorm { components: 2, dim: 2 };
        check_norm_axioms(&model, &Vector::real(u.clone()), &Vector::real(v), &a);
        // max component <= chain <= sum of components, exactly.
        let t = u[0].clone();
        let xs = [vec![u[1].clone(), u[2].clone()], vec![u[3].clone(), u[4].clone()]];
        let value = chain_norm(&t, &xs);
        let l1s: Vec<Rat> = xs
            .iter()
            .map(|x| x.iter().fold(Rat::zero(), |acc, c| acc + c.abs()))
            .collect();
        let lo = l1s.iter().cloned().max().unwrap().max(t.abs());
        let hi = l1s.iter().fold(t.abs(), |acc, c| acc + c);
        prop_assert!(lo <= value && value <= hi);
    }

    #[test]
    fn sign_sup_norm_axioms(
        u in proptest::collection::vec((small_rat(), small_rat()), 4),
        v in proptest::collection::vec((small_rat(), small_rat()), 4),
        a in small_rat(),
    ) {
        let model = NormModel::SignSup(4);
        let mk = |cs: Vec<(Rat, Rat)>| {
            Vector::complex(cs.into_iter().map(|(re, im)| ComplexRat::new(re, im)).collect())
        };
        check_norm_axioms(&model, &mk(u), &mk(v), &a);
    }

    #[test]
    fn complexified_zero_imaginary_is_base_norm(x in rat_vec(5)) {
        // ||x + i0|| equals the l1 norm of x, exactly.
        let t = tol();
        let v = Vector::real(x.clone());
        let c = norm(&NormModel::ComplexifiedL1(5), &v, &t).unwrap();
        let l1 = norm(&NormModel::L1Real(5), &v, &t).unwrap();
        prop_assert_eq!(c, l1);
    }

    #[test]
    fn phi_max_and_sum_are_norms(u in rat_vec(4), v in rat_vec(4), a in small_rat()) {
        for phi in [PhiSpec::Max, PhiSpec::Sum] {
            let model = NormModel::phi_sum(
                vec![NormModel::L1Real(2), NormModel::LinfReal(2)],
                phi,
            )
            .unwrap();
            check_norm_axioms(&model, &Vector::real(u.clone()), &Vector::real(v.clone()), &a);
        }
    }
}

#[test]
fn flow_value_equals_lp_value_on_random_networks() {
    let mut r = common::rng(0xF10);
    for i in 0..100 {
        let n = r.gen_range(2..=10);
        // Balanced random supplies.
        let mut supplies: Vec<Rat> = (0..n - 1).map(|_| common::rand_rat(&mut r, 5, 2)).collect();
        let total: Rat = supplies.iter().fold(Rat::zero(), |a, s| a + s);
        supplies.push(-total);
        // Dense-ish arc set with nonnegative costs; a zero-cost spanning
        // cycle keeps every instance feasible.
        let mut arcs = Vec::new();
        for v in 0..n {
            arcs.push(Arc {
                from: v,
                to: (v + 1) % n,
                cost: rat(r.gen_range(0..=6), 2),
                capacity: None,
            });
        }
        for _ in 0..r.gen_range(0..=2 * n) {
            let from = r.gen_range(0..n);
            let to = r.gen_range(0..n);
            if from != to {
                let capacity = if r.gen_bool(0.5) {
                    Some(rat(r.gen_range(1..=8), 2))
                } else {
                    None
                };
                arcs.push(Arc {
                    from,
                    to,
                    cost: rat(r.gen_range(0..=6), 2),
                    capacity,
                });
            }
        }
        let network = FlowNetwork { supplies, arcs };
        let flow = min_cost_flow(&network).unwrap();
        assert!(
            conserves(&network, &flow.flows),
            "conservation replay failed on {i}"
        );

        // Equivalent LP: minimize cost over conservation constraints.
        let m = network.arcs.len();
        let mut lp = LinearProgram::new(
            Sense::Minimize,
            network.arcs.iter().map(|a| a.cost.clone()).collect(),
        );
        for (k, arc) in network.arcs.iter().enumerate() {
            lp.set_nonnegative(k);
            if let Some(cap) = &arc.capacity {
                lp.set_upper(k, cap.clone());
            }
        }
        for v in 0..n {
            let mut row = vec![Rat::zero(); m];
            for (k, arc) in network.arcs.iter().enumerate() {
                if arc.from == v {
                    row[k] += rat_int(1);
                }
                if arc.to == v {
                    row[k] -= rat_int(1);
                }
            }
            lp.add_constraint(row, Relation::Eq, network.supplies[v].clone());
        }
        match lp_solve(&lp).unwrap() {
            LpResult::Optimal { value, solution } => {
                assert_eq!(value, flow.value, "flow/LP mismatch on instance {i}");
                assert_eq!(lp.objective_value(&solution), value);
                assert!(lp.is_feasible(&solution));
            }
            other => panic!("equivalent LP not optimal: {other:?}"),
        }
    }
}

#[test]
fn lp_solutions_reproduce_reported_values() {
    let mut r = common::rng(0xF11);
    let mut optimal_seen = 0;
    for _ in 0..120 {
        let nv = r.gen_range(1..=5);
        let mut lp = LinearProgram::new(
            Sense::Minimize,
            (0..nv).map(|_| common::rand_rat(&mut r, 4, 2)).collect(),
        );
        for v in 0..nv {
            if r.gen_bool(0.7) {
                lp.set_nonnegative(v);
            }
            if r.gen_bool(0.3) {
                lp.set_upper(v, rat(r.gen_range(0..=8), 1));
            }
        }
        for _ in 0..r.gen_range(1..=4) {
            let coeffs = (0..nv).map(|_| common::rand_rat(&mut r, 3, 1)).collect();
            let relation = match r.gen_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            lp.add_constraint(coeffs, relation, common::rand_rat(&mut r, 6, 2));
        }
        let first = lp_solve(&lp).unwrap();
        assert_eq!(
            first,
            lp_solve(&lp).unwrap(),
            "solver must be deterministic"
        );
        if let LpResult::Optimal { value, solution } = first {
            assert!(lp.is_feasible(&solution));
            assert_eq!(lp.objective_value(&solution), value);
            optimal_seen += 1;
        }
    }
    assert!(
        optimal_seen > 20,
        "generator produced too few optimal instances"
    );
}

#[test]
fn lower_l1_real_is_monotone_under_appending() {
    let mut r = common::rng(0xF12);
    for _ in 0..25 {
        let d = r.gen_range(1..=4);
        let members: Vec<Vector> = (0..4)
            .map(|_| Vector::real((0..d).map(|_| common::rand_rat(&mut r, 4, 3)).collect()))
            .collect();
        let mut prev: Option<Rat> = None;
        for take in 1..=members.len() {
            let fam = VectorFamily::adhoc(NormModel::L1Real(d), members[..take].to_vec());
            let value = lower_l1_real(&fam).unwrap().expect_exact().value.clone();
            if let Some(p) = prev {
                assert!(value <= p, "appending a member raised the lower estimate");
            }
            prev = Some(value);
        }
    }
}

#[test]
fn complex_bracket_is_consistent_and_below_real() {
    let mut r = common::rng(0xF13);
    let t = tol();
    for _ in 0..12 {
        let d = r.gen_range(1..=3);
        let n = r.gen_range(2..=3);
        // Real-valued members of a complex model.
        let members: Vec<Vector> = (0..n)
            .map(|_| Vector::real((0..d).map(|_| common::rand_rat(&mut r, 3, 2)).collect()))
            .collect();
        let fam = VectorFamily::adhoc(NormModel::L1Complex(d), members);
        let bracket = lower_l1_complex(&fam, 8, &t).unwrap();
        // lower <= upper.
        let lo = bracket.lower.enclosure(&t);
        let hi = bracket.upper.enclosure(&t);
        assert!(lo.lo() <= hi.hi(), "bracket inverted");
        // For real-valued families the complex minimum cannot exceed the
        // real one.
        let real_fam = VectorFamily::adhoc(NormModel::L1Real(d), fam.members.clone());
        let real = lower_l1_real(&real_fam)
            .unwrap()
            .expect_exact()
            .value
            .clone();
        assert!(
            *hi.lo() <= real + pow10_neg(20),
            "complex upper bound exceeded the real minimum"
        );
    }
}

#[test]
fn equivalence_constant_of_isometric_copies_is_one() {
    // Signed, permuted copies of the basis are isometric l1 copies.
    let perms: [[usize; 4]; 2] = [[2, 0, 3, 1], [3, 1, 0, 2]];
    for (p, perm) in perms.iter().enumerate() {
        let members: Vec<Vector> = perm
            .iter()
            .enumerate()
            .map(|(k, &to)| {
                let mut v = vec![Rat::zero(); 4];
                v[to] = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                Vector::real(v)
            })
            .collect();
        let fam = VectorFamily::adhoc(NormModel::L1Real(4), members);
        match l1_equivalence_constant(&fam, 8, &tol()).unwrap() {
            EquivalenceConstant::Exact(c) => assert_eq!(c, rat_int(1), "copy {p}"),
            other => panic!("expected exact constant, got {other:?}"),
        }
    }
}

#[test]
fn free_norm_is_monotone_under_inclusion() {
    let mut r = common::rng(0xF14);
    for _ in 0..25 {
        let space = common::rand_metric_space(&mut r, 4, 8);
        // Keep the base and a random subset of other points.
        let mut keep: Vec<usize> = vec![space.base()];
        for p in 0..space.points() {
            if p != space.base() && r.gen_bool(0.6) {
                keep.push(p);
            }
        }
        if keep.len() < 2 {
            continue;
        }
        keep.sort_unstable();
        let small = space.restrict(&keep).unwrap();
        let mu_small = common::rand_free_vector(&mut r, &small);
        // Same vector viewed in the larger space.
        let small_support = small.support_points();
        let mut big_coeffs = vec![Rat::zero(); space.points() - 1];
        let big_support = space.support_points();
        for (slot, &local) in small_support.iter().enumerate() {
            let global = keep[local];
            let big_slot = big_support.iter().position(|&q| q == global).unwrap();
            big_coeffs[big_slot] = mu_small.coeffs[slot].clone();
        }
        let mu_big = FreeVector { coeffs: big_coeffs };
        assert_eq!(
            free_norm_primal(&mu_small, &small).unwrap(),
            free_norm_primal(&mu_big, &space).unwrap(),
            "restriction changed a supported vector's norm"
        );
    }
}

#[test]
fn lipschitz_classification_is_equivalent_to_the_constant() {
    let mut r = common::rng(0xF15);
    let n = 4;
    let space = exlf_space(n);
    let count = space.points();
    let mut type2_seen = 0;
    for i in 0..1000 {
        let mut values: Vec<Rat> = (0..count).map(|_| rat(r.gen_range(-8..=8), 8)).collect();
        values[0] = Rat::zero(); // base value
        if i % 3 == 0 {
            // Bias toward nearly-Lipschitz functions to hit both sides.
            values = values.into_iter().map(|v| v / rat_int(4)).collect();
        }
        if i % 7 == 0 {
            // Plant a stretched antipodal pair with the rest confined to
            // [a-1, 1-b], the shape of a genuine second-class function.
            let a = rat(r.gen_range(5..=8), 8);
            let b = rat(r.gen_range(5..=8), 8);
            let lo = &a - rat_int(1);
            let width = (rat_int(1) - &b) - &lo;
            for v in values.iter_mut().skip(1) {
                *v = &lo + &width * rat(r.gen_range(0..=6), 6);
            }
            values[1] = a;
            values[2] = -b;
        }
        let f = LipFunction::new(&space, values).unwrap();
        let classified = classify_lip_exlf(&f, n);
        let is_one_lip = lip_constant(&f, &space) <= rat_int(1);
        assert_eq!(
            !matches!(classified, LipClassification::NotOneLipschitz),
            is_one_lip,
            "classification disagrees with the Lipschitz constant"
        );
        if matches!(classified, LipClassification::Type2 { .. }) {
            type2_seen += 1;
        }
    }
    assert!(
        type2_seen > 20,
        "generator never exercised the stretched-pair class"
    );
}

#[test]
fn roots_bruteforce_selects_consecutive_arcs() {
    let fine = pow10_neg(40);
    for n in 1..=8u32 {
        let w = roots_witness(n, &fine);
        let points = w.points_approx(&fine);
        let (subset, _) = best_subset_bruteforce(&points).unwrap();
        assert_eq!(subset.len(), n as usize, "optimal subset is a half circle");
        assert!(
            is_circular_interval(&subset, 2 * n as usize),
            "subset {subset:?} is not consecutive mod {}",
            2 * n
        );
    }
}

#[test]
fn selection_is_deterministic() {
    let mut r = common::rng(0xF16);
    for _ in 0..50 {
        let m = r.gen_range(1..=8);
        let lambda: Vec<ComplexRat> = (0..m).map(|_| common::rand_complex(&mut r, 6, 3)).collect();
        let a = halfplane_select(&lambda, &tol()).unwrap();
        let b = halfplane_select(&lambda, &tol()).unwrap();
        assert_eq!(a.subset, b.subset);
        assert_eq!(a.subset_sum, b.subset_sum);
        let (s1, _) = best_subset_bruteforce(&lambda).unwrap();
        let (s2, _) = best_subset_bruteforce(&lambda).unwrap();
        assert_eq!(s1, s2);
    }
}

#[test]
fn primal_dual_agree_on_star_extensions() {
    // The sandwich spaces exercise the degenerate all-equal-distance corner.
    let mut r = common::rng(0xF17);
    for _ in 0..20 {
        let (space, _, b) = common::rand_separated_space(&mut r, 2, 6);
        let ext = space.star_extension(&(&b / rat_int(2))).unwrap();
        let mu = common::rand_free_vector(&mut r, &ext);
        assert_eq!(
            free_norm_primal(&mu, &ext).unwrap(),
            free_norm_dual(&mu, &ext).unwrap()
        );
    }
}

#[test]
fn example_truncations_are_norm_compatible() {
    // A vector supported in a smaller truncation keeps its norm in larger
    // ones (matched base points).
    use normlab_core::free::examples::{exlf3_space, exlf_space};
    let small = exlf_space(3);
    let big = exlf_space(5);
    let mu_small = FreeVector {
        coeffs: vec![
            rat(1, 2),
            rat(-1, 3),
            rat_int(2),
            rat_int(0),
            rat_int(0),
            rat(5, 7),
        ],
    };
    let mut coeffs = mu_small.coeffs.clone();
    coeffs.resize(big.points() - 1, normlab_core::num::rat_int(0));
    let mu_big = FreeVector { coeffs };
    assert_eq!(
        free_norm_primal(&mu_small, &small).unwrap(),
        free_norm_primal(&mu_big, &big).unwrap()
    );

    let small3 = exlf3_space(3);
    let big3 = exlf3_space(6);
    let mu_small3 = FreeVector {
        coeffs: vec![rat_int(1), rat(-3, 2), rat(2, 5), rat_int(0), rat_int(1)],
    };
    let mut coeffs3 = mu_small3.coeffs.clone();
    coeffs3.resize(big3.points() - 1, normlab_core::num::rat_int(0));
    let mu_big3 = FreeVector { coeffs: coeffs3 };
    assert_eq!(
        free_norm_primal(&mu_small3, &small3).unwrap(),
        free_norm_primal(&mu_big3, &big3).unwrap()
    );
}

#[test]
fn complexified_equivalence_grows_toward_half_pi() {
    let report = staged_report(StagedTag::ComplexifiedEquivalence, 8, &tol());
    assert!(report.monotone_ok());
    assert_eq!(report.target_ok(), Some(true));
}

#[test]
fn diam_and_separation_on_mixed_value_forms() {
    // Complexified basis distances are exact square roots; the fold must
    // stay exact.
    let fam = Generator::ComplexifiedBasis.family(4);
    let (diam, sep) = diam_and_separation(&fam, &tol()).unwrap();
    assert_eq!(diam, Value::rational(rat_int(2)));
    assert_eq!(sep, Value::rational(rat_int(2)));
}

#[test]
fn sign_sup_rejects_oversized_enumeration() {
    let alpha = vec![ComplexRat::from_real(rat_int(1)); 21];
    assert!(sign_sup_norm(&alpha).is_err());
}

#[test]
fn dual_norm_witness_is_lipschitz() {
    // The dual optimum is attained by a function in the unit ball: replay
    // the ball constraints against an explicit dual solve.
    let mut r = common::rng(0xF18);
    let space = common::rand_metric_space(&mut r, 3, 6);
    let mu = common::rand_free_vector(&mut r, &space);
    let d = free_norm_dual(&mu, &space).unwrap();
    let p = free_norm_primal(&mu, &space).unwrap();
    assert_eq!(d, p);
}
