//! Finite-stage sequence quantities: oscillation and separation of a family,
//! lower l1-estimate constants over real and complex coefficients, the
//! induced basis-equivalence constants, gliding-hump block selection, and
//! staged convergence reports toward the registered limit constants.
//!
//! The real lower estimate minimizes the norm over the l1-sphere of
//! coefficients by enumerating its orthants: on each orthant the sphere
//! constraint is linear and the polyhedral norm has an exact LP epigraph, so
//! the minimum is an exact rational. Over complex coefficients the quantity
//! is nonconvex; the artifact reports a certified bracket instead: an upper
//! bound from explicit witnesses and a lower bound from a polyhedral
//! minorant LP on the realified doubled family (worth a factor `1/sqrt(2)`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::free::examples::{exlf3_space, exlf_space};
use crate::free::FreeVector;
use crate::num::{pi_enclosure, pow10_neg, rat, rat_int, ComplexRat, Enclosure, Rat, Value};
use crate::optim::{lp_solve, LinExpr, LpBuilder, LpResult, Relation, Sense};
use crate::spaces::{
    complex_minorant_epigraph, norm, polyhedral_epigraph, value_max, value_min, NormModel, Scalar,
    Vector,
};
use crate::subset::roots_witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantError {
    TooFewMembers,
    TooManyMembers { got: usize, max: usize },
    NonPolyhedralModel,
    NotComplexModel,
    NotNormalized { member: usize },
    PhaseGridTooSmall { got: u32 },
    EmptyInput,
    Space(crate::spaces::SpaceError),
}

impl fmt::Display for QuantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantError::TooFewMembers => write!(f, "family needs at least two members"),
            QuantError::TooManyMembers { got, max } => {
                write!(f, "{got} members exceed the orthant cap of {max}")
            }
            QuantError::NonPolyhedralModel => {
                write!(f, "real lower estimates need a polyhedral model")
            }
            QuantError::NotComplexModel => {
                write!(f, "complex lower estimates need a complex-scalar model")
            }
            QuantError::NotNormalized { member } => {
                write!(f, "member {member} is not normalized")
            }
            QuantError::PhaseGridTooSmall { got } => {
                write!(f, "phase grid size {got} is below the minimum of 4")
            }
            QuantError::EmptyInput => write!(f, "input must be nonempty"),
            QuantError::Space(e) => write!(f, "{e}"),
        }
    }
}

impl From<crate::spaces::SpaceError> for QuantError {
    fn from(e: crate::spaces::SpaceError) -> Self {
        QuantError::Space(e)
    }
}

/// Cap on the orthant enumeration (2^(N-1) LPs).
pub const ORTHANT_CAP: usize = 14;

// ---------------------------------------------------------------------------
// Families and generators
// ---------------------------------------------------------------------------

/// Named deterministic family generators; `(tag, stage)` regenerates the
/// exact same members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Canonical basis of real l1^stage.
    L1Basis,
    /// Canonical basis of complex l1^stage.
    L1BasisComplex,
    /// Canonical basis of the complexification of real l1^stage.
    ComplexifiedBasis,
    /// Coordinate projections of the sign cube (stage coordinates).
    CantorProjections,
    /// Alternating atoms `delta(1), delta(-1), ...` on the first example
    /// graph (stage members).
    ExlfAlternating,
    /// Antipodal differences `delta(n) - delta(-n)` on the second example
    /// graph (stage members).
    Exlf3Differences,
    /// The two-member family `(e_1, i e_1)` in complex l1^1.
    E1IE1,
}

impl Generator {
    pub fn tag(&self) -> &'static str {
        match self {
            Generator::L1Basis => "l1-basis",
            Generator::L1BasisComplex => "l1-basis-complex",
            Generator::ComplexifiedBasis => "complexified-basis",
            Generator::CantorProjections => "cantor-projections",
            Generator::ExlfAlternating => "exlf-alternating",
            Generator::Exlf3Differences => "exlf3-differences",
            Generator::E1IE1 => "e1-ie1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Generator> {
        [
            Generator::L1Basis,
            Generator::L1BasisComplex,
            Generator::ComplexifiedBasis,
            Generator::CantorProjections,
            Generator::ExlfAlternating,
            Generator::Exlf3Differences,
            Generator::E1IE1,
        ]
        .into_iter()
        .find(|g| g.tag() == tag)
    }

    pub fn family(&self, stage: u32) -> VectorFamily {
        let stage = stage.max(1);
        let n = stage as usize;
        let (model, members) = match self {
            Generator::L1Basis => (
                NormModel::L1Real(n),
                (0..n).map(|k| Vector::basis(n, k)).collect(),
            ),
            Generator::L1BasisComplex => (
                NormModel::L1Complex(n),
                (0..n).map(|k| Vector::basis(n, k)).collect(),
            ),
            Generator::ComplexifiedBasis => (
                NormModel::ComplexifiedL1(n),
                (0..n).map(|k| Vector::basis(n, k)).collect(),
            ),
            Generator::CantorProjections => (
                NormModel::SignSup(n),
                (0..n).map(|k| Vector::basis(n, k)).collect(),
            ),
            Generator::ExlfAlternating => {
                let half = n.div_ceil(2) as u32;
                let space = exlf_space(half.max(1));
                let members = (1..=half as i64)
                    .flat_map(|k| [k, -k])
                    .take(n)
                    .map(|v| {
                        let mu = FreeVector::delta(&space, &alloc::format!("{v}"))
                            .expect("nonzero label");
                        Vector::real(mu.coeffs)
                    })
                    .collect();
                (NormModel::FreeSpace(space), members)
            }
            Generator::Exlf3Differences => {
                let space = exlf3_space((n as u32).max(2));
                let members = (1..=n as i64)
                    .map(|k| {
                        let plus = FreeVector::atom(&space, &alloc::format!("{k}")).unwrap();
                        let minus = FreeVector::atom(&space, &alloc::format!("{}", -k)).unwrap();
                        Vector::real(plus.sub(&minus).coeffs)
                    })
                    .collect();
                (NormModel::FreeSpace(space), members)
            }
            Generator::E1IE1 => {
                let e1 = Vector::basis(1, 0);
                let ie1 = e1.scale(&ComplexRat::new(Rat::zero(), rat_int(1)));
                (NormModel::L1Complex(1), vec![e1, ie1])
            }
        };
        VectorFamily {
            model,
            members,
            generator: Some((*self, stage)),
        }
    }
}

/// An ordered finite family of vectors under one norm model.
#[derive(Clone, Debug)]
pub struct VectorFamily {
    pub model: NormModel,
    pub members: Vec<Vector>,
    pub generator: Option<(Generator, u32)>,
}

impl VectorFamily {
    pub fn adhoc(model: NormModel, members: Vec<Vector>) -> Self {
        VectorFamily {
            model,
            members,
            generator: None,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn members_are_real(&self) -> bool {
        self.members.iter().all(Vector::is_real)
    }
}

// ---------------------------------------------------------------------------
// Oscillation and separation
// ---------------------------------------------------------------------------

/// Exact diameter and minimal pairwise distance of the family.
pub fn diam_and_separation(
    family: &VectorFamily,
    tolerance: &Rat,
) -> Result<(Value, Value), QuantError> {
    if family.len() < 2 {
        return Err(QuantError::TooFewMembers);
    }
    let mut dists = Vec::new();
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let diff = family.members[i].sub(&family.members[j]);
            dists.push(norm(&family.model, &diff, tolerance)?);
        }
    }
    Ok((value_max(&dists, tolerance), value_min(&dists, tolerance)))
}

// ---------------------------------------------------------------------------
// Real lower l1 estimates (orthant LP enumeration)
// ---------------------------------------------------------------------------

/// Result of the exact real-coefficient minimization, with the minimizing
/// coefficient vector as a reusable witness.
#[derive(Clone, Debug)]
pub struct LowerL1Real {
    pub value: Rat,
    pub witness: Vec<Rat>,
}

/// Real-coefficient lower estimate: exact on polyhedral models, a certified
/// bracket when the members carry complex coordinates (the real span of a
/// complex family is a real space whose norm involves moduli).
#[derive(Clone, Debug)]
pub enum RealLowerEstimate {
    Exact(LowerL1Real),
    Bracket {
        lower: Value,
        upper: Value,
        witness: Vec<Rat>,
    },
}

impl RealLowerEstimate {
    /// The certified lower side (exact when `Exact`).
    pub fn lower(&self) -> Value {
        match self {
            RealLowerEstimate::Exact(e) => Value::rational(e.value.clone()),
            RealLowerEstimate::Bracket { lower, .. } => lower.clone(),
        }
    }

    /// The certified upper side (exact when `Exact`).
    pub fn upper(&self) -> Value {
        match self {
            RealLowerEstimate::Exact(e) => Value::rational(e.value.clone()),
            RealLowerEstimate::Bracket { upper, .. } => upper.clone(),
        }
    }

    pub fn expect_exact(&self) -> &LowerL1Real {
        match self {
            RealLowerEstimate::Exact(e) => e,
            other => panic!("expected exact real lower estimate, got {other:?}"),
        }
    }
}

fn real_restriction(model: &NormModel) -> Option<NormModel> {
    match model {
        NormModel::L1Real(_)
        | NormModel::LinfReal(_)
        | NormModel::FreeSpace(_)
        | NormModel::ChainNorm { .. } => Some(model.clone()),
        // On real vectors these norms collapse to l1.
        NormModel::SignSup(d) | NormModel::L1Complex(d) | NormModel::ComplexifiedL1(d) => {
            Some(NormModel::L1Real(*d))
        }
        NormModel::PhiSum(..) => None,
    }
}

/// Shared orthant sweep: minimizes the polyhedral epigraph objective built by
/// `build` over each orthant of the coefficient sphere (halved by the
/// `alpha <-> -alpha` symmetry), returning the best value and coefficients.
fn orthant_minimum(
    n: usize,
    build: impl Fn(&mut LpBuilder, &[usize], &[Rat]) -> Result<LinExpr, QuantError>,
) -> Result<(Rat, Vec<Rat>), QuantError> {
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for mask in 0u32..(1u32 << (n - 1)) {
        let signs: Vec<Rat> = (0..n)
            .map(|k| {
                if k > 0 && mask & (1 << (k - 1)) != 0 {
                    rat_int(-1)
                } else {
                    rat_int(1)
                }
            })
            .collect();
        let mut b = LpBuilder::new(Sense::Minimize);
        let betas: Vec<usize> = (0..n).map(|_| b.add_var(Some(Rat::zero()), None)).collect();
        b.constrain(
            betas.iter().map(|&v| (v, rat_int(1))).collect(),
            Relation::Eq,
            rat_int(1),
        );
        let cost = build(&mut b, &betas, &signs)?;
        b.add_objective(cost);
        match lp_solve(&b.build()).expect("well-formed orthant LP") {
            LpResult::Optimal { value, solution } => {
                let better = best.as_ref().is_none_or(|(bv, _)| value < *bv);
                if better {
                    let alpha: Vec<Rat> = (0..n).map(|k| &signs[k] * &solution[betas[k]]).collect();
                    best = Some((value, alpha));
                }
            }
            other => unreachable!("orthant LP is feasible and bounded: {other:?}"),
        }
    }
    Ok(best.expect("at least one orthant"))
}

/// `min ||sum_k alpha_k x_k||` over real alpha with `sum |alpha_k| = 1`:
/// exact via one LP per orthant when the model is polyhedral over the
/// members, a certified bracket (minorant LP below, explicit sign-pattern
/// witnesses above) when the members are genuinely complex.
pub fn lower_l1_real(family: &VectorFamily) -> Result<RealLowerEstimate, QuantError> {
    let n = family.len();
    if n == 0 {
        return Err(QuantError::TooFewMembers);
    }
    if n > ORTHANT_CAP {
        return Err(QuantError::TooManyMembers {
            got: n,
            max: ORTHANT_CAP,
        });
    }
    let dim = family.model.dim();
    if family.members_are_real() {
        let model = real_restriction(&family.model).ok_or(QuantError::NonPolyhedralModel)?;
        if !model.is_polyhedral() {
            return Err(QuantError::NonPolyhedralModel);
        }
        let coords: Vec<Vec<Rat>> = family.members.iter().map(Vector::real_parts).collect();
        let (value, witness) = orthant_minimum(n, |b, betas, signs| {
            let exprs: Vec<LinExpr> = (0..dim)
                .map(|j| {
                    (0..n)
                        .filter_map(|k| {
                            let c = &signs[k] * &coords[k][j];
                            if c.is_zero() {
                                None
                            } else {
                                Some((betas[k], c))
                            }
                        })
                        .collect()
                })
                .collect();
            Ok(polyhedral_epigraph(&model, b, &exprs)?)
        })?;
        return Ok(RealLowerEstimate::Exact(LowerL1Real { value, witness }));
    }

    // Complex members under real coefficients: certified bracket.
    if family.model.scalar() != Scalar::Complex {
        return Err(QuantError::NonPolyhedralModel);
    }
    let members = &family.members;
    let (minorant, lp_witness) = orthant_minimum(n, |b, betas, signs| {
        let expr_for = |part_im: bool, j: usize| -> LinExpr {
            (0..n)
                .filter_map(|k| {
                    let z = &members[k].coords[j];
                    let c = if part_im { &z.im } else { &z.re };
                    let c = &signs[k] * c;
                    if c.is_zero() {
                        None
                    } else {
                        Some((betas[k], c))
                    }
                })
                .collect()
        };
        let re_exprs: Vec<LinExpr> = (0..dim).map(|j| expr_for(false, j)).collect();
        let im_exprs: Vec<LinExpr> = (0..dim).map(|j| expr_for(true, j)).collect();
        Ok(complex_minorant_epigraph(
            &family.model,
            b,
            &re_exprs,
            &im_exprs,
        )?)
    })?;
    let lower = Value::sqrt_rational(&minorant * &minorant / rat_int(2));

    // Upper bound: true norm at the LP witness and at every uniform sign
    // pattern (exact square-root values; tolerance only breaks comparison
    // ties that exact forms cannot decide).
    let tolerance = pow10_neg(30);
    let mut upper: Option<(Value, Vec<Rat>)> = None;
    let mut try_witness = |alpha: Vec<Rat>| -> Result<(), QuantError> {
        let mass: Rat = alpha
            .iter()
            .map(Signed::abs)
            .fold(Rat::zero(), |a, t| a + t);
        if mass.is_zero() {
            return Ok(());
        }
        let coeffs: Vec<ComplexRat> = alpha
            .iter()
            .map(|c| ComplexRat::from_real(c / &mass))
            .collect();
        let sum = Vector::combine(members, &coeffs);
        let value = norm(&family.model, &sum, &tolerance)?;
        let better = match &upper {
            None => true,
            Some((b, _)) => {
                matches!(
                    value.cmp_certified(b, &tolerance),
                    Some(core::cmp::Ordering::Less)
                )
            }
        };
        if better {
            upper = Some((value, alpha));
        }
        Ok(())
    };
    try_witness(lp_witness)?;
    let uniform = rat(1, n as i64);
    for mask in 0u32..(1u32 << (n - 1)) {
        let alpha: Vec<Rat> = (0..n)
            .map(|k| {
                if k > 0 && mask & (1 << (k - 1)) != 0 {
                    -uniform.clone()
                } else {
                    uniform.clone()
                }
            })
            .collect();
        try_witness(alpha)?;
    }
    let (upper, witness) = upper.expect("witnesses were tried");
    Ok(RealLowerEstimate::Bracket {
        lower,
        upper,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Complex lower l1 estimates (certified bracket)
// ---------------------------------------------------------------------------

/// Certified bracket for the complex-coefficient lower estimate.
#[derive(Clone, Debug)]
pub struct LowerL1Complex {
    pub lower: Value,
    pub upper: Value,
    /// The witness attaining the reported upper bound.
    pub witness: Vec<ComplexRat>,
}

/// Rational points on the unit circle from the tangent half-angle sweep
/// `t -> ((1-t^2) + 2ti) / (1+t^2)`, with `t` on a grid of size ~`p` over
/// `[-1, 1]`, plus their negatives: exactly unimodular, covering the circle.
fn rational_phases(p: u32) -> Vec<ComplexRat> {
    let half = (p / 2).max(2) as i64;
    let mut phases = Vec::new();
    for j in -half..=half {
        let t = rat(j, half);
        let denom = rat_int(1) + &t * &t;
        let re = (rat_int(1) - &t * &t) / &denom;
        let im = rat_int(2) * &t / &denom;
        let z = ComplexRat::new(re, im);
        phases.push(z.neg());
        phases.push(z);
    }
    phases
}

/// `min ||sum alpha_k x_k||` over complex alpha on the l1 sphere, as a
/// certified bracket: witnesses give the upper bound; the realified
/// polyhedral minorant LP over the doubled family `{x_k, i x_k}` gives the
/// lower bound (the LP value divided by `sqrt(2)`).
pub fn lower_l1_complex(
    family: &VectorFamily,
    phase_grid: u32,
    tolerance: &Rat,
) -> Result<LowerL1Complex, QuantError> {
    if family.model.scalar() != Scalar::Complex {
        return Err(QuantError::NotComplexModel);
    }
    if phase_grid < 4 {
        return Err(QuantError::PhaseGridTooSmall { got: phase_grid });
    }
    let n = family.len();
    if n == 0 {
        return Err(QuantError::TooFewMembers);
    }

    // --- upper bound: explicit witnesses ---
    let mut best: Option<(Value, Vec<ComplexRat>)> = None;
    let mut try_witness = |alpha: Vec<ComplexRat>| -> Result<(), QuantError> {
        // Normalize exactly when possible: the quotient ||sum|| / sum|alpha|
        // is a valid sphere value for any nonzero alpha.
        let sum = Vector::combine(&family.members, &alpha);
        let value = norm(&family.model, &sum, tolerance)?;
        let mass: Vec<Value> = alpha
            .iter()
            .filter(|a| !a.is_zero())
            .map(ComplexRat::modulus)
            .collect();
        if mass.is_empty() {
            return Ok(());
        }
        let total = crate::spaces::value_sum(&mass, tolerance);
        let quotient = match (&value, &total) {
            (Value::Rational(v), Value::Rational(t)) => Value::rational(v / t),
            (Value::SqrtRational(q), Value::Rational(t)) => Value::sqrt_rational(q / (t * t)),
            _ => {
                let e = value
                    .enclosure(tolerance)
                    .div_pos(&total.enclosure(tolerance));
                Value::enclosed(e)
            }
        };
        let better = match &best {
            None => true,
            Some((b, _)) => {
                matches!(
                    quotient.cmp_certified(b, tolerance),
                    Some(core::cmp::Ordering::Less)
                )
            }
        };
        if better {
            best = Some((quotient, alpha));
        }
        Ok(())
    };

    // Real-orthant minimizer, when the family is real-valued and small.
    if family.members_are_real() && n <= ORTHANT_CAP {
        if let Ok(RealLowerEstimate::Exact(real)) = lower_l1_real(family) {
            try_witness(
                real.witness
                    .iter()
                    .map(|c| ComplexRat::from_real(c.clone()))
                    .collect(),
            )?;
        }
    }

    // Registered closed-form witness: roots of unity on sign-type models.
    if let Some((gen, _)) = family.generator {
        if matches!(
            gen,
            Generator::CantorProjections | Generator::ComplexifiedBasis
        ) && n.is_multiple_of(2)
        {
            let order = (n / 2) as u32;
            let w = roots_witness(order, &pow10_neg(40));
            let scale = rat(1, 2 * order as i64);
            let alpha: Vec<ComplexRat> = w
                .points_approx(&pow10_neg(40))
                .into_iter()
                .map(|z| z.scale(&scale))
                .collect();
            try_witness(alpha)?;
        }
    }

    // Uniform-magnitude phase grid (capped) and pairwise cancellation probes.
    let phases = rational_phases(phase_grid);
    let uniform = rat(1, n as i64);
    let combos = (phases.len() as u64).checked_pow(n as u32);
    if let Some(c) = combos {
        if c <= 4096 {
            let mut idx = vec![0usize; n];
            loop {
                let alpha: Vec<ComplexRat> =
                    idx.iter().map(|&i| phases[i].scale(&uniform)).collect();
                try_witness(alpha)?;
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < phases.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }
    let half = rat(1, 2);
    for i in 0..n {
        for j in (i + 1)..n {
            for ph in &phases {
                let mut alpha = vec![ComplexRat::zero(); n];
                alpha[i] = ComplexRat::from_real(half.clone());
                alpha[j] = ph.scale(&half);
                try_witness(alpha)?;
            }
        }
    }
    // Single atoms (upper bound 1 for normalized members).
    for i in 0..n {
        let mut alpha = vec![ComplexRat::zero(); n];
        alpha[i] = ComplexRat::from_real(rat_int(1));
        try_witness(alpha)?;
    }

    let (upper, witness) = best.expect("atom witnesses always apply");

    // --- lower bound ---
    let lower = complex_lower_bound(family, tolerance)?;

    Ok(LowerL1Complex {
        lower,
        upper,
        witness,
    })
}

/// Lower bound via the realified minorant LP over the doubled family, or a
/// registered exact value where the norm identity is closed-form.
fn complex_lower_bound(family: &VectorFamily, _tolerance: &Rat) -> Result<Value, QuantError> {
    // The complex l1 basis has ||sum alpha_k e_k|| = sum |alpha_k| = 1
    // identically on the sphere.
    if let Some((Generator::L1BasisComplex, _)) = family.generator {
        return Ok(Value::rational(rat_int(1)));
    }
    let n = family.len();
    if 2 * n > ORTHANT_CAP {
        return Ok(Value::zero()); // trivial certified bound at large stages
    }
    // Doubled family {x_k, i x_k} with real coefficients (a_k, b_k):
    // sum (a_k + i b_k) x_k realifies coordinatewise.
    let dim = family.model.dim();
    let i_unit = ComplexRat::new(Rat::zero(), rat_int(1));
    let doubled: Vec<Vector> = family
        .members
        .iter()
        .cloned()
        .chain(family.members.iter().map(|v| v.scale(&i_unit)))
        .collect();
    let m = doubled.len();
    let mut best: Option<Rat> = None;
    for mask in 0u32..(1u32 << (m - 1)) {
        let signs: Vec<Rat> = (0..m)
            .map(|k| {
                if k > 0 && mask & (1 << (k - 1)) != 0 {
                    rat_int(-1)
                } else {
                    rat_int(1)
                }
            })
            .collect();
        let mut b = LpBuilder::new(Sense::Minimize);
        let betas: Vec<usize> = (0..m).map(|_| b.add_var(Some(Rat::zero()), None)).collect();
        b.constrain(
            betas.iter().map(|&v| (v, rat_int(1))).collect(),
            Relation::Eq,
            rat_int(1),
        );
        let expr_for = |part_im: bool, j: usize| -> LinExpr {
            (0..m)
                .filter_map(|k| {
                    let z = &doubled[k].coords[j];
                    let c = if part_im { &z.im } else { &z.re };
                    let c = &signs[k] * c;
                    if c.is_zero() {
                        None
                    } else {
                        Some((betas[k], c))
                    }
                })
                .collect()
        };
        let re_exprs: Vec<LinExpr> = (0..dim).map(|j| expr_for(false, j)).collect();
        let im_exprs: Vec<LinExpr> = (0..dim).map(|j| expr_for(true, j)).collect();
        let cost = complex_minorant_epigraph(&family.model, &mut b, &re_exprs, &im_exprs)?;
        b.add_objective(cost);
        match lp_solve(&b.build()).expect("well-formed minorant LP") {
            LpResult::Optimal { value, .. } => {
                let better = best.as_ref().is_none_or(|bv| value < *bv);
                if better {
                    best = Some(value);
                }
            }
            other => unreachable!("minorant LP is feasible and bounded: {other:?}"),
        }
    }
    let l = best.expect("at least one orthant");
    // Reported bound is L / sqrt(2), kept in exact square-root form.
    Ok(Value::sqrt_rational(&l * &l / rat_int(2)))
}

// ---------------------------------------------------------------------------
// Equivalence constants
// ---------------------------------------------------------------------------

/// The best `c` such that the family is `c`-equivalent to the canonical l1
/// basis (for normalized members the upper estimate constant is 1, so the
/// constant is the reciprocal of the lower estimate).
#[derive(Clone, Debug)]
pub enum EquivalenceConstant {
    /// Real scalars: exact value.
    Exact(Rat),
    /// Complex scalars: certified bracket (upper side absent while the
    /// certified lower estimate is 0).
    Bracket { lo: Value, hi: Option<Value> },
    /// Lower estimate vanished; no finite equivalence constant exists.
    Infinite,
}

pub fn l1_equivalence_constant(
    family: &VectorFamily,
    phase_grid: u32,
    tolerance: &Rat,
) -> Result<EquivalenceConstant, QuantError> {
    // Members must be normalized (within 1e-12; exactly when forms allow).
    let slack = pow10_neg(12);
    let one_lo = Value::rational(rat_int(1) - &slack);
    let one_hi = Value::rational(rat_int(1) + &slack);
    for (i, member) in family.members.iter().enumerate() {
        let nv = norm(&family.model, member, tolerance)?;
        let ok = matches!(
            nv.cmp_certified(&one_lo, tolerance),
            Some(core::cmp::Ordering::Greater) | Some(core::cmp::Ordering::Equal)
        ) && matches!(
            nv.cmp_certified(&one_hi, tolerance),
            Some(core::cmp::Ordering::Less) | Some(core::cmp::Ordering::Equal)
        );
        if !ok {
            return Err(QuantError::NotNormalized { member: i });
        }
    }
    match family.model.scalar() {
        Scalar::Real => {
            let lower = lower_l1_real(family)?.expect_exact().clone();
            if lower.value.is_zero() {
                Ok(EquivalenceConstant::Infinite)
            } else {
                Ok(EquivalenceConstant::Exact(lower.value.recip()))
            }
        }
        Scalar::Complex => {
            let bracket = lower_l1_complex(family, phase_grid, tolerance)?;
            if bracket.upper.is_zero() {
                return Ok(EquivalenceConstant::Infinite);
            }
            let lo = bracket.upper.recip();
            let hi = if bracket.lower.is_zero() {
                None
            } else {
                Some(bracket.lower.recip())
            };
            Ok(EquivalenceConstant::Bracket { lo, hi })
        }
    }
}

// ---------------------------------------------------------------------------
// Gliding hump
// ---------------------------------------------------------------------------

/// A block selection: vector indices `n_1 < n_2 < ...` and boundaries
/// `m = N_0 < N_1 < ...` such that each selected vector holds all but `eps`
/// of its tail mass (beyond `m`) inside its own block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HumpSelection {
    pub cut: usize,
    pub indices: Vec<usize>,
    pub boundaries: Vec<usize>,
}

fn slice_l1(y: &[Rat], from: usize, to: usize) -> Rat {
    y[from.min(y.len())..to.min(y.len())]
        .iter()
        .fold(Rat::zero(), |a, c| a + c.abs())
}

/// Greedy selection: accept a vector when some block end past the current
/// boundary captures all but `eps` of its tail mass, choosing the smallest
/// such end; skip it otherwise.
pub fn gliding_hump(ys: &[Vec<Rat>], cut: usize, eps: &Rat) -> Result<HumpSelection, QuantError> {
    if ys.is_empty() {
        return Err(QuantError::EmptyInput);
    }
    assert!(eps.is_positive());
    let mut indices = Vec::new();
    let mut boundaries = vec![cut];
    let mut current = cut;
    for (k, y) in ys.iter().enumerate() {
        let d = y.len();
        let tail = slice_l1(y, cut, d);
        let threshold = &tail - eps;
        // Smallest end > current whose block mass exceeds tail - eps; block
        // mass grows with the end, so the first success is the minimum and
        // a failure at the last end means the vector must be skipped.
        let mut chosen: Option<usize> = None;
        for end in (current + 1)..=d.max(current + 1) {
            if slice_l1(y, current, end) > threshold {
                chosen = Some(end);
                break;
            }
        }
        if let Some(end) = chosen {
            indices.push(k);
            boundaries.push(end);
            current = end;
        }
    }
    Ok(HumpSelection {
        cut,
        indices,
        boundaries,
    })
}

impl HumpSelection {
    /// Replays the block-norm invariant exactly.
    pub fn verify(&self, ys: &[Vec<Rat>], eps: &Rat) -> bool {
        if self.boundaries.len() != self.indices.len() + 1 {
            return false;
        }
        if self.boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (slot, &k) in self.indices.iter().enumerate() {
            let y = &ys[k];
            let tail = slice_l1(y, self.cut, y.len());
            let block = slice_l1(y, self.boundaries[slot], self.boundaries[slot + 1]);
            if block <= &tail - eps {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Finite-stage Rosenthal inequality
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct RosenthalReport {
    pub lower_estimate: Rat,
    pub min_separation: Value,
    pub diameter: Value,
    pub holds: bool,
}

/// Checks `2 * lower <= min pairwise distance <= diameter`, exactly.
pub fn rosenthal_stage_check(
    family: &VectorFamily,
    tolerance: &Rat,
) -> Result<RosenthalReport, QuantError> {
    if !family.members_are_real() {
        return Err(QuantError::NonPolyhedralModel);
    }
    let lower = lower_l1_real(family)?.expect_exact().clone();
    let (diameter, min_separation) = diam_and_separation(family, tolerance)?;
    let two_lower = Value::rational(rat_int(2) * &lower.value);
    let first = matches!(
        two_lower.cmp_certified(&min_separation, tolerance),
        Some(core::cmp::Ordering::Less) | Some(core::cmp::Ordering::Equal)
    );
    let second = matches!(
        min_separation.cmp_certified(&diameter, tolerance),
        Some(core::cmp::Ordering::Less) | Some(core::cmp::Ordering::Equal)
    );
    Ok(RosenthalReport {
        lower_estimate: lower.value,
        min_separation,
        diameter,
        holds: first && second,
    })
}

// ---------------------------------------------------------------------------
// Staged convergence reports
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Decreasing,
    Increasing,
    None,
}

/// Registered staged quantities with their limit constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StagedTag {
    /// Best-subset ratio of the roots family; decreases to 1/pi.
    RootsRatio,
    /// Witnessed upper bound for the sign-cube lower estimate; decreases
    /// to 2/pi.
    CantorDcjUpper,
    /// Real lower estimate of the l1 basis; constant 1.
    L1BasisCjr,
    /// Equivalence-constant lower bound of the complexified basis;
    /// increases to pi/2.
    ComplexifiedEquivalence,
}

impl StagedTag {
    pub fn tag(&self) -> &'static str {
        match self {
            StagedTag::RootsRatio => "roots-ratio",
            StagedTag::CantorDcjUpper => "cantor-dcj-upper",
            StagedTag::L1BasisCjr => "l1-basis-cjr",
            StagedTag::ComplexifiedEquivalence => "complexified-equivalence",
        }
    }

    pub fn from_tag(tag: &str) -> Option<StagedTag> {
        [
            StagedTag::RootsRatio,
            StagedTag::CantorDcjUpper,
            StagedTag::L1BasisCjr,
            StagedTag::ComplexifiedEquivalence,
        ]
        .into_iter()
        .find(|t| t.tag() == tag)
    }
}

/// A monotone sequence of stage values with its registered target.
#[derive(Clone, Debug)]
pub struct StagedValues {
    pub tag: StagedTag,
    pub stages: Vec<(u32, Enclosure)>,
    pub direction: Direction,
    pub target: Option<Enclosure>,
    /// Tolerance for the final stage against the target; relative when
    /// `relative` is set.
    pub tolerance: Rat,
    pub relative: bool,
    /// Stage at which the tolerance is calibrated; shorter runs report no
    /// target verdict.
    pub target_stage: u32,
}

impl StagedValues {
    /// Certified monotonicity of the stage values in the declared direction.
    pub fn monotone_ok(&self) -> bool {
        self.stages.windows(2).all(|w| match self.direction {
            Direction::Decreasing => w[1].1.hi() < w[0].1.lo(),
            Direction::Increasing => w[1].1.lo() > w[0].1.hi(),
            Direction::None => true,
        })
    }

    /// Certified `|last - target| <= tolerance` (scaled by the target when
    /// relative).
    pub fn target_ok(&self) -> Option<bool> {
        let target = self.target.as_ref()?;
        let (_, last) = self.stages.last()?;
        let dist = last.sub(target).abs();
        let budget = if self.relative {
            target.scale(&self.tolerance)
        } else {
            Enclosure::exact(self.tolerance.clone())
        };
        Some(*dist.hi() <= *budget.lo())
    }

    /// Target verdict, suppressed while the run is shorter than the stage
    /// the tolerance was calibrated for.
    pub fn target_verdict(&self) -> Option<bool> {
        let (last_stage, _) = self.stages.last()?;
        if *last_stage < self.target_stage {
            return None;
        }
        self.target_ok()
    }
}

/// Evaluates a registered staged quantity at stages `1..=max_stage`.
pub fn staged_report(tag: StagedTag, max_stage: u32, tolerance: &Rat) -> StagedValues {
    let tol = tolerance.clone().min(pow10_neg(25));
    let pi = pi_enclosure(&tol);
    match tag {
        StagedTag::RootsRatio => {
            let stages = (1..=max_stage)
                .map(|n| (n, roots_witness(n, &tol).ratio))
                .collect();
            StagedValues {
                tag,
                stages,
                direction: Direction::Decreasing,
                target: Some(Enclosure::exact(rat_int(1)).div_pos(&pi)),
                tolerance: rat(2, 10_000),
                relative: false,
                target_stage: 64,
            }
        }
        StagedTag::CantorDcjUpper => {
            let stages = (1..=max_stage)
                .map(|n| (n, roots_witness(n, &tol).ratio.scale(&rat_int(2))))
                .collect();
            StagedValues {
                tag,
                stages,
                direction: Direction::Decreasing,
                target: Some(Enclosure::exact(rat_int(2)).div_pos(&pi)),
                tolerance: rat(1, 200),
                relative: true,
                target_stage: 16,
            }
        }
        StagedTag::L1BasisCjr => {
            let stages = (1..=max_stage.min(10))
                .map(|n| {
                    let fam = Generator::L1Basis.family(n);
                    let v = lower_l1_real(&fam)
                        .expect("basis family is polyhedral")
                        .expect_exact()
                        .clone();
                    (n, Enclosure::exact(v.value))
                })
                .collect();
            StagedValues {
                tag,
                stages,
                direction: Direction::None,
                target: Some(Enclosure::exact(rat_int(1))),
                tolerance: Rat::zero(),
                relative: false,
                target_stage: 1,
            }
        }
        StagedTag::ComplexifiedEquivalence => {
            let stages = (1..=max_stage)
                .map(|n| {
                    let w = roots_witness(n, &tol);
                    let bound = w.ratio.scale(&rat_int(2));
                    (n, Enclosure::exact(rat_int(1)).div_pos(&bound))
                })
                .collect();
            StagedValues {
                tag,
                stages,
                direction: Direction::Increasing,
                target: Some(pi.scale(&rat(1, 2))),
                tolerance: rat(1, 50),
                relative: false,
                target_stage: 8,
            }
        }
    }
}
