//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the constants it verified. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines).

mod common;

use normlab_core::free::certify::{
    exceptional_pair_certificate, schur_witness_report, separated_sandwich_check, witness_family,
};
use normlab_core::free::examples::{
    exlf_norm_formula, exlf_space, mprime_norm_formula, zero_one_space, ExampleGraph,
};
use normlab_core::free::{free_norm_dual, free_norm_primal, graph_metric, FreeVector};
use normlab_core::num::{pi_enclosure, pow10_neg, rat, rat_int, ComplexRat, Enclosure, Rat, Value};
use normlab_core::quantities::{
    diam_and_separation, gliding_hump, lower_l1_complex, lower_l1_real, rosenthal_stage_check,
    staged_report, Generator, RealLowerEstimate, StagedTag, VectorFamily,
};
use normlab_core::spaces::{complexified_norm, sign_sup_norm, value_sum, NormModel, Vector};
use normlab_core::subset::{best_subset_bruteforce, halfplane_select, roots_witness};
use normlab_core::sums::{build_witness_x, build_witness_z_default, telescoping_identity};
use num_traits::Zero;
use rand::Rng;

fn tol() -> Rat {
    pow10_neg(30)
}

fn assert_strictly_above_inv_pi(ratio: &Value) {
    let t = tol();
    let pi = pi_enclosure(&t);
    let inv_pi = Enclosure::exact(rat_int(1)).div_pos(&pi);
    let e = ratio.enclosure(&t);
    assert!(e.lo() > inv_pi.hi(), "ratio {ratio} does not clear 1/pi");
}

#[test]
fn c01_rudin_selection_matches_bruteforce_and_clears_inv_pi() {
    let mut r = common::rng(0xC1);
    let t = tol();
    let mut nonzero_instances = 0;
    for _ in 0..1000 {
        let m = r.gen_range(1..=12);
        let lambda: Vec<ComplexRat> = (0..m)
            .map(|_| {
                if r.gen_range(0..8) == 0 {
                    ComplexRat::zero()
                } else {
                    common::rand_complex(&mut r, 8, 4)
                }
            })
            .collect();
        let hp = halfplane_select(&lambda, &t).unwrap();
        let (_, brute_sum) = best_subset_bruteforce(&lambda).unwrap();
        assert_eq!(
            hp.subset_sum.modulus_sq(),
            brute_sum.modulus_sq(),
            "half-plane selection missed the brute-force optimum on {lambda:?}"
        );
        if !hp.total.is_zero() {
            assert_strictly_above_inv_pi(&hp.ratio);
            nonzero_instances += 1;
        }
    }
    assert!(nonzero_instances > 900);
    println!(
        "PASS  1 Rudin selection: 1000 instances, half-plane == brute force exactly, ratio > 1/pi on {nonzero_instances} nonzero instances"
    );
}

#[test]
fn c02_roots_ratio_decreases_to_inv_pi() {
    let report = staged_report(StagedTag::RootsRatio, 256, &tol());
    assert!(report.monotone_ok(), "roots ratio must strictly decrease");
    let at_64 = staged_report(StagedTag::RootsRatio, 64, &tol());
    assert_eq!(
        at_64.target_ok(),
        Some(true),
        "stage 64 misses 1/pi by more than 2e-4"
    );
    // Every stage stays strictly above the limit.
    let pi = pi_enclosure(&tol());
    let inv_pi = Enclosure::exact(rat_int(1)).div_pos(&pi);
    for (n, e) in &report.stages {
        assert!(e.lo() > inv_pi.hi(), "stage {n} ratio fell to 1/pi");
    }
    println!(
        "PASS  2 optimality witness: ratio strictly decreasing for n=1..256, within 2e-4 of 1/pi at n=64"
    );
}

#[test]
fn c03_transportation_duality_exact() {
    let mut r = common::rng(0xC3);
    for i in 0..200 {
        let space = common::rand_metric_space(&mut r, 2, 10);
        let mu = common::rand_free_vector(&mut r, &space);
        let p = free_norm_primal(&mu, &space).unwrap();
        let d = free_norm_dual(&mu, &space).unwrap();
        assert_eq!(p, d, "primal/dual gap on instance {i}");
    }
    println!("PASS  3 transportation duality: primal == dual exactly on 200 random spaces");
}

#[test]
fn c04_closed_form_norms_match_dual() {
    let mut r = common::rng(0xC4);
    let n = 5;
    let space = exlf_space(n);
    for _ in 0..100 {
        let mu = common::rand_free_vector(&mut r, &space);
        let formula = exlf_norm_formula(&mu, n);
        let dual = free_norm_dual(&mu, &space).unwrap();
        assert_eq!(formula, dual, "pair-graph formula mismatch on {mu:?}");
    }
    let zo = zero_one_space(n);
    for _ in 0..100 {
        let mu = common::rand_free_vector(&mut r, &zo);
        let formula = mprime_norm_formula(&mu);
        let dual = free_norm_dual(&mu, &zo).unwrap();
        assert_eq!(formula, dual, "discrete formula mismatch on {mu:?}");
    }
    println!("PASS  4 closed-form free norms: both formulas == dual LP exactly on 100 vectors each (N=5)");
}

#[test]
fn c05_graph_metrics_match_closed_forms_to_50() {
    for example in [ExampleGraph::Exlf, ExampleGraph::Exlf3] {
        let n = 50;
        let space = example.space(n);
        let bfs = graph_metric(&example.graph(n), 0).unwrap();
        assert_eq!(space.points(), bfs.points());
        for i in 0..space.points() {
            for j in 0..space.points() {
                assert_eq!(
                    space.dist(i, j),
                    bfs.dist(i, j),
                    "{} closed form disagrees with BFS at ({i},{j})",
                    example.name()
                );
            }
        }
    }
    println!("PASS  5 graph metrics: BFS == closed form for all pairs up to N=50 on both examples");
}

#[test]
fn c06_example_constants_exact() {
    let n = 6;
    let space = exlf_space(n);
    for k in 1..=n as i64 {
        let plus = FreeVector::delta(&space, &format!("{k}")).unwrap();
        let minus = FreeVector::delta(&space, &format!("{}", -k)).unwrap();
        let diff = plus.sub(&minus);
        assert_eq!(free_norm_primal(&diff, &space).unwrap(), rat_int(2));
        assert_eq!(free_norm_dual(&diff, &space).unwrap(), rat_int(2));
        assert_eq!(exlf_norm_formula(&diff, n), rat_int(2));
        assert_eq!(free_norm_primal(&plus, &space).unwrap(), rat_int(1));
    }
    let (space3, members) = witness_family(ExampleGraph::Exlf3, 6);
    for m in &members {
        assert_eq!(free_norm_primal(m, &space3).unwrap(), rat_int(3));
    }
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let d = free_norm_primal(&members[i].sub(&members[j]), &space3).unwrap();
            assert_eq!(d, rat_int(4));
        }
    }
    println!("PASS  6 example constants: ||atom diff|| = 2 (exlf); member norm 3, pairwise 4 (exlf3, N=6)");
}

#[test]
fn c07_delta_certificates() {
    let eps = rat(1, 4);
    let cert3 = exceptional_pair_certificate(ExampleGraph::Exlf3, 6, &eps).unwrap();
    assert!(
        cert3.lp1_all_equal(&rat_int(1)),
        "every simultaneous-gap optimum on exlf3 must be exactly 1"
    );
    let cert = exceptional_pair_certificate(ExampleGraph::Exlf, 5, &eps).unwrap();
    assert!(
        cert.lp2_all_at_most(&rat(3, 4)),
        "confined oscillation on exlf must stay below 1 - eps"
    );
    assert_eq!(cert.lp2_max().unwrap(), &rat(3, 4), "the bound is attained");
    // The witness reports expose the implied constant gaps.
    let report = schur_witness_report(ExampleGraph::Exlf, 5).unwrap();
    assert_eq!(report.oscillation_ratio, rat_int(2));
    let report3 = schur_witness_report(ExampleGraph::Exlf3, 6).unwrap();
    assert_eq!(report3.oscillation_ratio, rat_int(2));
    assert_eq!(report3.cluster_ratio, rat_int(3));
    println!(
        "PASS  7 delta certificates: LP1 == 1 on exlf3 (N=6, all 15 pair-pairs); LP2 <= 3/4 on exlf (N=5, eps=1/4)"
    );
}

#[test]
fn c08_lower_l1_estimates() {
    for n in 1..=10 {
        let fam = Generator::L1Basis.family(n);
        let est = lower_l1_real(&fam).unwrap().expect_exact().clone();
        assert_eq!(est.value, rat_int(1), "basis stage {n}");
    }
    // (e_1, i e_1): real stage 1/sqrt(2), complex upper bound exactly 0.
    let fam = Generator::E1IE1.family(2);
    match lower_l1_real(&fam).unwrap() {
        RealLowerEstimate::Bracket { lower, upper, .. } => {
            let target = Value::sqrt_rational(rat(1, 2));
            assert_eq!(lower, target);
            assert_eq!(upper, target);
        }
        other => panic!("expected a bracket for complex members, got {other:?}"),
    }
    let bracket = lower_l1_complex(&fam, 8, &tol()).unwrap();
    assert!(
        bracket.upper.is_zero(),
        "cancellation witness must reach 0 exactly"
    );
    println!(
        "PASS  8 lower l1 estimates: basis cjr == 1 (N<=10); (e_1, i e_1) real stage == 1/sqrt(2), complex upper == 0"
    );
}

#[test]
fn c09_cantor_dcj_upper_bounds() {
    let t = tol();
    let report = staged_report(StagedTag::CantorDcjUpper, 16, &t);
    assert!(
        report.monotone_ok(),
        "witnessed upper bounds must strictly decrease"
    );
    assert_eq!(
        report.target_ok(),
        Some(true),
        "stage 16 misses 2/pi by more than 0.5%"
    );
    // Brute-force cross-check of the closed form while 2^(2n) is affordable:
    // evaluate the sign-sup norm of the approximated roots witness.
    let fine = pow10_neg(40);
    for n in 1..=8u32 {
        let w = roots_witness(n, &fine);
        let scale = rat(1, 2 * n as i64);
        let alpha: Vec<ComplexRat> = w
            .points_approx(&fine)
            .into_iter()
            .map(|z| z.scale(&scale))
            .collect();
        let value = sign_sup_norm(&alpha).unwrap();
        let mass: Vec<Value> = alpha.iter().map(ComplexRat::modulus).collect();
        let total = value_sum(&mass, &t);
        let quotient = value.enclosure(&t).div_pos(&total.enclosure(&t));
        let closed = w.ratio.scale(&rat_int(2));
        let gap = quotient.sub(&closed).abs();
        assert!(
            *gap.hi() <= pow10_neg(15),
            "stage {n}: brute force {quotient:?} vs closed form {closed:?}"
        );
    }
    println!(
        "PASS  9 sign-cube upper bounds: strictly decreasing, within 0.5% of 2/pi at stage 16; brute force matches closed form for n<=8"
    );
}

#[test]
fn c10_complexification_agrees_with_sign_embedding() {
    let mut r = common::rng(0xC10);
    let t = tol();
    for _ in 0..200 {
        let d = r.gen_range(1..=10);
        let xs: Vec<Rat> = (0..d).map(|_| common::rand_rat(&mut r, 6, 4)).collect();
        let ys: Vec<Rat> = (0..d).map(|_| common::rand_rat(&mut r, 6, 4)).collect();
        let sweep = complexified_norm(&xs, &ys, &NormModel::L1Real(d)).unwrap();
        let z: Vec<ComplexRat> = xs
            .iter()
            .zip(&ys)
            .map(|(a, b)| ComplexRat::new(a.clone(), b.clone()))
            .collect();
        let embedded = sign_sup_norm(&z).unwrap();
        assert_eq!(sweep, embedded, "angle sweep disagrees with the embedding");
        // Also the 1e-12 form the criterion asks for.
        let gap = sweep.enclosure(&t).sub(&embedded.enclosure(&t)).abs();
        assert!(*gap.hi() <= pow10_neg(12));
    }
    let d = 5;
    let e = |k: usize| {
        let mut v = vec![Rat::zero(); d];
        v[k] = rat_int(1);
        v
    };
    let zero = vec![Rat::zero(); d];
    let base = NormModel::L1Real(d);
    assert_eq!(
        complexified_norm(&e(2), &zero, &base).unwrap(),
        Value::rational(rat_int(1))
    );
    let mut diff = e(1);
    diff[3] = rat_int(-1);
    assert_eq!(
        complexified_norm(&diff, &zero, &base).unwrap(),
        Value::rational(rat_int(2))
    );
    println!(
        "PASS 10 complexification: angle sweep == sign embedding exactly on 200 instances; ||e_k|| = 1, ||e_k - e_l|| = 2"
    );
}

#[test]
fn c11_chain_norm_witnesses_and_telescoping() {
    for n in 1..=6 {
        for k in [0u32, 1, 7, 99, 100] {
            // Construction asserts the exact value n + 1.
            let w = build_witness_x(n, k);
            assert_eq!(w.norm, rat_int(n as i64 + 1));
        }
    }
    for n in 1..=4 {
        for m in [1u32, 2, 3, 4, 8, 16, 64] {
            let z = build_witness_z_default(n, m);
            assert_eq!(z.norm, rat_int(1));
        }
    }
    for n in 1..=8 {
        for m in 1..=128 {
            assert!(
                telescoping_identity(n, m),
                "telescoping failed at ({n},{m})"
            );
        }
    }
    println!(
        "PASS 11 chain witnesses: ||x^k|| = n+1 and ||z^m|| = 1 exactly (n<=4, m<=64); telescoping exact (n<=8, m<=128)"
    );
}

#[test]
fn c12_finite_stage_rosenthal() {
    let t = tol();
    let mut r = common::rng(0xC12);
    // Registered families.
    let registered = [
        Generator::L1Basis.family(6),
        Generator::CantorProjections.family(5),
        Generator::ExlfAlternating.family(6),
        Generator::Exlf3Differences.family(4),
    ];
    for fam in &registered {
        let report = rosenthal_stage_check(fam, &t).unwrap();
        assert!(
            report.holds,
            "registered family violated the stage inequality"
        );
    }
    // Random families over assorted polyhedral models.
    for i in 0..60 {
        let fam = match i % 4 {
            0 => {
                let d = r.gen_range(1..=5);
                let members = (0..r.gen_range(2..=5))
                    .map(|_| Vector::real((0..d).map(|_| common::rand_rat(&mut r, 5, 3)).collect()))
                    .collect();
                VectorFamily::adhoc(NormModel::L1Real(d), members)
            }
            1 => {
                let d = r.gen_range(1..=5);
                let members = (0..r.gen_range(2..=5))
                    .map(|_| Vector::real((0..d).map(|_| common::rand_rat(&mut r, 5, 3)).collect()))
                    .collect();
                VectorFamily::adhoc(NormModel::LinfReal(d), members)
            }
            2 => {
                let model = NormModel::ChainNorm {
                    components: 2,
                    dim: 2,
                };
                let members = (0..r.gen_range(2..=4))
                    .map(|_| Vector::real((0..5).map(|_| common::rand_rat(&mut r, 4, 3)).collect()))
                    .collect();
                VectorFamily::adhoc(model, members)
            }
            _ => {
                let space = common::rand_metric_space(&mut r, 2, 6);
                let members = (0..r.gen_range(2..=4))
                    .map(|_| Vector::real(common::rand_free_vector(&mut r, &space).coeffs))
                    .collect();
                VectorFamily::adhoc(NormModel::FreeSpace(space), members)
            }
        };
        let report = rosenthal_stage_check(&fam, &t).unwrap();
        assert!(
            report.holds,
            "random family {i} violated 2*cjr <= separation <= diameter"
        );
    }
    println!(
        "PASS 12 finite-stage lower-estimate inequality: 2*cjr <= min distance <= diameter on 60 random + 4 registered families"
    );
}

#[test]
fn c13_separation_sandwich() {
    let mut r = common::rng(0xC13);
    for i in 0..100 {
        let (space, a, b) = common::rand_separated_space(&mut r, 2, 7);
        let samples: Vec<Vec<Rat>> = (0..3)
            .map(|_| {
                (0..space.points())
                    .map(|_| common::rand_rat(&mut r, 5, 3))
                    .collect()
            })
            .chain(std::iter::once(vec![Rat::zero(); space.points()]))
            .collect();
        let report = separated_sandwich_check(&space, &a, &b, &samples).unwrap();
        assert!(
            report.all_hold(),
            "sandwich failed on instance {i} (a={a}, b={b})"
        );
    }
    println!(
        "PASS 13 uniform-separation sandwich: (a/2)||.||_1 <= ||.|| <= (b/2)||.||_1 on 100 random star-extended spaces"
    );
}

#[test]
fn c14_gliding_hump_replay() {
    let mut r = common::rng(0xC14);
    for _ in 0..100 {
        let count = r.gen_range(1..=12);
        let dim = r.gen_range(5..=24);
        let ys: Vec<Vec<Rat>> = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|j| {
                        let decay = 1i64 << (j / 2).min(20) as u32;
                        rat(r.gen_range(0..=6), r.gen_range(1..=3)) * rat(1, decay)
                    })
                    .collect()
            })
            .collect();
        let cut = r.gen_range(0..=3.min(dim - 1));
        let eps = rat(1, r.gen_range(2..=10));
        let sel = gliding_hump(&ys, cut, &eps).unwrap();
        assert!(sel.verify(&ys, &eps), "block invariant replay failed");
    }
    // Disjoint supports select everything with unit blocks.
    let ys: Vec<Vec<Rat>> = (0..5)
        .map(|k| {
            let mut y = vec![Rat::zero(); 5];
            y[k] = rat_int(1);
            y
        })
        .collect();
    let sel = gliding_hump(&ys, 0, &rat(1, 10)).unwrap();
    assert_eq!(sel.indices.len(), 5);
    assert!(sel.verify(&ys, &rat(1, 10)));
    println!("PASS 14 gliding hump: block invariant replayed exactly on 100 random sequences");
}

#[test]
fn c15_scope_note() {
    // The headline properties (c-Schur of whole spaces, equivalence of
    // measures of weak non-compactness) quantify over all bounded sequences
    // of an infinite-dimensional space and are not finitely decidable. The
    // suites above mechanize every finite computation the proofs rest on:
    // oracle-checked selections, exact norms and certificates, and staged
    // convergence toward the limiting constants.
    let (diam, sep) = diam_and_separation(&Generator::L1Basis.family(4), &tol()).unwrap();
    assert_eq!(diam, Value::rational(rat_int(2)));
    assert_eq!(sep, Value::rational(rat_int(2)));
    println!(
        "PASS 15 scope note: asymptotic theorems are represented by their finite certificates only"
    );
}
