//! Registry of concretely computable norm models and their evaluation.
//!
//! Polyhedral models (weighted l1/linf, free spaces, the chain norm) evaluate
//! to exact rationals. The sign-pattern sup norm and the complexified l1 norm
//! evaluate to exact square roots of rationals: the first by enumerating the
//! 2^d patterns, the second by an exact angle sweep whose arcs each
//! contribute one candidate radicand. Only genuinely transcendental
//! compositions degrade to certified enclosures.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::free::{free_norm_primal, FiniteMetricSpace, FreeVector};
use crate::num::{
    angle_cmp, nth_root_enclosure, pow_rat, rat_int, ComplexRat, Enclosure, Rat, Value,
};
use crate::optim::{LinExpr, LpBuilder, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceError {
    ShapeMismatch { expected: usize, got: usize },
    ScalarMismatch,
    DimensionTooLarge { got: usize, max: usize },
    UnsupportedBase,
    NonPolyhedral,
    BadPhi,
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::ShapeMismatch { expected, got } => {
                write!(f, "vector has {got} coordinates, model expects {expected}")
            }
            SpaceError::ScalarMismatch => write!(f, "complex coordinates fed to a real model"),
            SpaceError::DimensionTooLarge { got, max } => {
                write!(f, "dimension {got} exceeds the enumeration cap of {max}")
            }
            SpaceError::UnsupportedBase => {
                write!(f, "complexification is only computed over the l1 base norm")
            }
            SpaceError::NonPolyhedral => write!(f, "operation requires a polyhedral model"),
            SpaceError::BadPhi => {
                write!(
                    f,
                    "Phi must sit between the sup and sum norms on sign patterns"
                )
            }
        }
    }
}

/// Scalar field of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scalar {
    Real,
    Complex,
}

/// The menu of direct-sum aggregators: max, sum, and integer-p l_p norms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    Max,
    Sum,
    Lp(u32),
}

impl PhiSpec {
    /// Checks `sup <= Phi <= sum` on the standard basis vectors and sampled
    /// sign patterns of R^n, the normalization the direct-sum construction
    /// needs.
    pub fn validate(&self, n: usize) -> Result<(), SpaceError> {
        if n == 0 {
            return Err(SpaceError::BadPhi);
        }
        if let PhiSpec::Lp(p) = self {
            if *p < 1 {
                return Err(SpaceError::BadPhi);
            }
        }
        let tol = crate::num::pow10_neg(20);
        let one = Value::rational(rat_int(1));
        let full = Value::rational(rat_int(n as i64));
        let within = |v: &Value, lo: &Value, hi: &Value| {
            !matches!(v.cmp_certified(lo, &tol), Some(Ordering::Less))
                && !matches!(v.cmp_certified(hi, &tol), Some(Ordering::Greater))
        };
        // Basis vectors: Phi(e_j) must be exactly between sup and sum, both 1.
        for j in 0..n {
            let mut values = vec![Value::zero(); n];
            values[j] = one.clone();
            let phi = self.apply(&values, &tol);
            if !within(&phi, &one, &one) {
                return Err(SpaceError::BadPhi);
            }
        }
        // Every sign pattern reduces to the all-ones vector after the
        // component norms are taken: sup 1, sum n.
        let ones = vec![one.clone(); n];
        let phi = self.apply(&ones, &tol);
        if !within(&phi, &one, &full) {
            return Err(SpaceError::BadPhi);
        }
        Ok(())
    }

    /// Applies Phi to a vector of nonnegative component values.
    fn apply(&self, values: &[Value], tolerance: &Rat) -> Value {
        match self {
            PhiSpec::Max => value_max(values, tolerance),
            PhiSpec::Sum => value_sum(values, tolerance),
            PhiSpec::Lp(p) => {
                if *p == 1 {
                    return value_sum(values, tolerance);
                }
                let mut acc = Enclosure::exact(Rat::zero());
                for v in values {
                    let e = v.enclosure(tolerance);
                    // v >= 0, so powers are monotone.
                    acc = acc.add(&Enclosure::new(pow_rat(e.lo(), *p), pow_rat(e.hi(), *p)));
                }
                let lo = nth_root_enclosure(acc.lo(), *p, tolerance);
                let hi = nth_root_enclosure(acc.hi(), *p, tolerance);
                Value::enclosed(Enclosure::new(lo.lo().clone(), hi.hi().clone()))
            }
        }
    }
}

/// A tagged description of a concretely computable normed space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormModel {
    /// Real l1^d.
    L1Real(usize),
    /// Complex l1^d.
    L1Complex(usize),
    /// Real linf^d.
    LinfReal(usize),
    /// Sup over sign patterns of `|sum_j alpha_j s_j|` (complex scalars).
    SignSup(usize),
    /// Complexification of real l1^d: `||x+iy|| = sup_theta ||x cos + y sin||_1`.
    ComplexifiedL1(usize),
    /// Free space over a finite metric space (coordinates per non-base point).
    FreeSpace(FiniteMetricSpace),
    /// Direct sum of component models aggregated by Phi.
    PhiSum(Vec<NormModel>, PhiSpec),
    /// The chain norm on `F x (l1^d)^n`:
    /// `max_k (||x_k||_1 + sum_{j>k} ||x_j||_inf)` against `|t| + sum_j ||x_j||_inf`.
    ChainNorm { components: usize, dim: usize },
}

/// Enumeration cap for the 2^d sign-pattern models.
pub const SIGN_ENUM_CAP: usize = 20;

impl NormModel {
    pub fn phi_sum(components: Vec<NormModel>, phi: PhiSpec) -> Result<NormModel, SpaceError> {
        phi.validate(components.len())?;
        if components.is_empty() {
            return Err(SpaceError::BadPhi);
        }
        let scalar = components[0].scalar();
        if components.iter().any(|c| c.scalar() != scalar) {
            return Err(SpaceError::ScalarMismatch);
        }
        Ok(NormModel::PhiSum(components, phi))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormModel::L1Real(d)
            | NormModel::L1Complex(d)
            | NormModel::LinfReal(d)
            | NormModel::SignSup(d)
            | NormModel::ComplexifiedL1(d) => *d,
            NormModel::FreeSpace(m) => m.points() - 1,
            NormModel::PhiSum(cs, _) => cs.iter().map(NormModel::dim).sum(),
            NormModel::ChainNorm { components, dim } => 1 + components * dim,
        }
    }

    pub fn scalar(&self) -> Scalar {
        match self {
            NormModel::L1Real(_)
            | NormModel::LinfReal(_)
            | NormModel::FreeSpace(_)
            | NormModel::ChainNorm { .. } => Scalar::Real,
            NormModel::L1Complex(_) | NormModel::SignSup(_) | NormModel::ComplexifiedL1(_) => {
                Scalar::Complex
            }
            NormModel::PhiSum(cs, _) => cs[0].scalar(),
        }
    }

    /// Whether the norm evaluates to an exact rational on rational input.
    pub fn is_polyhedral(&self) -> bool {
        match self {
            NormModel::L1Real(_)
            | NormModel::LinfReal(_)
            | NormModel::FreeSpace(_)
            | NormModel::ChainNorm { .. } => true,
            NormModel::L1Complex(_) | NormModel::SignSup(_) | NormModel::ComplexifiedL1(_) => false,
            NormModel::PhiSum(cs, phi) => {
                matches!(phi, PhiSpec::Max | PhiSpec::Sum | PhiSpec::Lp(1))
                    && cs.iter().all(NormModel::is_polyhedral)
            }
        }
    }
}

/// A coordinate vector conforming to some model. Imaginary parts must vanish
/// for real-scalar models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub coords: Vec<ComplexRat>,
}

impl Vector {
    pub fn real(coords: Vec<Rat>) -> Self {
        Vector {
            coords: coords.into_iter().map(ComplexRat::from_real).collect(),
        }
    }

    pub fn complex(coords: Vec<ComplexRat>) -> Self {
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![ComplexRat::zero(); dim],
        }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.coords[k] = ComplexRat::from_real(rat_int(1));
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.im.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, by: &ComplexRat) -> Self {
        Vector {
            coords: self.coords.iter().map(|c| c.mul(by)).collect(),
        }
    }

    pub fn real_parts(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| c.re.clone()).collect()
    }

    /// `sum_k coeff_k v_k` over a family of equal-dimension vectors.
    pub fn combine(vectors: &[Vector], coeffs: &[ComplexRat]) -> Self {
        assert_eq!(vectors.len(), coeffs.len());
        let dim = vectors.first().map_or(0, Vector::dim);
        let mut acc = Vector::zero(dim);
        for (v, c) in vectors.iter().zip(coeffs) {
            acc = acc.add(&v.scale(c));
        }
        acc
    }
}

fn check_shape(model: &NormModel, v: &Vector) -> Result<(), SpaceError> {
    if v.dim() != model.dim() {
        return Err(SpaceError::ShapeMismatch {
            expected: model.dim(),
            got: v.dim(),
        });
    }
    if model.scalar() == Scalar::Real && !v.is_real() {
        return Err(SpaceError::ScalarMismatch);
    }
    Ok(())
}

/// Evaluates the model norm. Exact rational for polyhedral models, exact
/// square root of a rational for the sign-sup and complexified models,
/// certified enclosure otherwise.
pub fn norm(model: &NormModel, v: &Vector, tolerance: &Rat) -> Result<Value, SpaceError> {
    check_shape(model, v)?;
    match model {
        NormModel::L1Real(_) => Ok(Value::rational(
            v.coords
                .iter()
                .map(|c| c.re.abs())
                .fold(Rat::zero(), |a, t| a + t),
        )),
        NormModel::LinfReal(_) => Ok(Value::rational(
            v.coords
                .iter()
                .map(|c| c.re.abs())
                .max()
                .unwrap_or_else(Rat::zero),
        )),
        NormModel::L1Complex(_) => {
            let moduli: Vec<Value> = v
                .coords
                .iter()
                .filter(|z| !z.is_zero())
                .map(ComplexRat::modulus)
                .collect();
            Ok(value_sum(&moduli, tolerance))
        }
        NormModel::SignSup(d) => {
            if *d > SIGN_ENUM_CAP {
                return Err(SpaceError::DimensionTooLarge {
                    got: *d,
                    max: SIGN_ENUM_CAP,
                });
            }
            Ok(Value::sqrt_rational(sign_sup_norm_sq(&v.coords)))
        }
        NormModel::ComplexifiedL1(_) => {
            Ok(Value::sqrt_rational(complexified_l1_norm_sq(&v.coords)))
        }
        NormModel::FreeSpace(space) => {
            let mu = FreeVector {
                coeffs: v.real_parts(),
            };
            Ok(Value::rational(free_norm_primal(&mu, space).map_err(
                |_| SpaceError::ShapeMismatch {
                    expected: space.points() - 1,
                    got: v.dim(),
                },
            )?))
        }
        NormModel::PhiSum(components, phi) => {
            let mut offset = 0;
            let mut values = Vec::with_capacity(components.len());
            for c in components {
                let d = c.dim();
                let slice = Vector {
                    coords: v.coords[offset..offset + d].to_vec(),
                };
                values.push(norm(c, &slice, tolerance)?);
                offset += d;
            }
            Ok(phi.apply(&values, tolerance))
        }
        NormModel::ChainNorm { components, dim } => Ok(Value::rational(chain_norm_exact(
            *components,
            *dim,
            &v.real_parts(),
        ))),
    }
}

/// `max_{s in {-1,1}^d} |sum_j s_j alpha_j|^2`, exact, by a Gray-code walk.
fn sign_sup_norm_sq(alpha: &[ComplexRat]) -> Rat {
    let d = alpha.len();
    if d == 0 {
        return Rat::zero();
    }
    let mut sum = alpha.iter().fold(ComplexRat::zero(), |a, z| a.add(z));
    let mut signs = vec![true; d];
    let mut best = sum.modulus_sq();
    let total = 1u64 << (d - 1); // patterns come in +- pairs; walk half
    for g in 1..total {
        let bit = g.trailing_zeros() as usize;
        let delta = alpha[bit].scale(&rat_int(2));
        if signs[bit] {
            sum = sum.sub(&delta);
        } else {
            sum = sum.add(&delta);
        }
        signs[bit] = !signs[bit];
        let m = sum.modulus_sq();
        if m > best {
            best = m;
        }
    }
    best
}

/// Standalone sign-pattern sup norm of complex coefficients: the finite-stage
/// sup over `{-1,1}^d` of `|sum_j alpha_j s_j|`.
pub fn sign_sup_norm(alpha: &[ComplexRat]) -> Result<Value, SpaceError> {
    if alpha.len() > SIGN_ENUM_CAP {
        return Err(SpaceError::DimensionTooLarge {
            got: alpha.len(),
            max: SIGN_ENUM_CAP,
        });
    }
    Ok(Value::sqrt_rational(sign_sup_norm_sq(alpha)))
}

/// `sup_{a^2+b^2=1} ||a x + b y||_1` squared, exact, via the angle sweep: the
/// term signs are constant on arcs between the critical directions
/// `+-i(x_k + i y_k)`, and on each arc the sum is a single sinusoid whose
/// peak `A^2 + B^2` dominates the arc; the global value is the max over arcs.
fn complexified_l1_norm_sq(z: &[ComplexRat]) -> Rat {
    let nonzero: Vec<&ComplexRat> = z.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Rat::zero();
    }
    let mut directions: Vec<ComplexRat> = Vec::with_capacity(2 * nonzero.len());
    for c in &nonzero {
        directions.push(c.rot90());
        directions.push(c.rot90().neg());
    }
    directions.sort_by(angle_cmp);
    directions.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);

    let mut best = Rat::zero();
    for w in &directions {
        // Sign pattern on the arc just counterclockwise of w.
        let iw = w.rot90();
        let mut a = Rat::zero(); // sum sigma_k x_k
        let mut b = Rat::zero(); // sum sigma_k y_k
        for c in &nonzero {
            let d = c.dot(w);
            let positive = if d.is_zero() {
                // Boundary term: enters the positive side just after w
                // exactly when it is a positive multiple of i*w.
                if iw.re.is_zero() {
                    (c.im.is_positive()) == (iw.im.is_positive())
                } else {
                    (c.re.is_positive()) == (iw.re.is_positive())
                }
            } else {
                d.is_positive()
            };
            if positive {
                a += &c.re;
                b += &c.im;
            } else {
                a -= &c.re;
                b -= &c.im;
            }
        }
        let cand = &a * &a + &b * &b;
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Complexification norm `||x + iy||` over the real l1 base, by angle sweep.
/// Only the l1 base is supported; other bases are rejected.
pub fn complexified_norm(x: &[Rat], y: &[Rat], base: &NormModel) -> Result<Value, SpaceError> {
    if !matches!(base, NormModel::L1Real(_)) {
        return Err(SpaceError::UnsupportedBase);
    }
    if x.len() != y.len() || x.len() != base.dim() {
        return Err(SpaceError::ShapeMismatch {
            expected: base.dim(),
            got: x.len(),
        });
    }
    let z: Vec<ComplexRat> = x
        .iter()
        .zip(y)
        .map(|(a, b)| ComplexRat::new(a.clone(), b.clone()))
        .collect();
    Ok(Value::sqrt_rational(complexified_l1_norm_sq(&z)))
}

/// Composite Phi-sum norm of per-component vectors.
pub fn phi_sum_norm(
    phi: &PhiSpec,
    components: &[(NormModel, Vector)],
    tolerance: &Rat,
) -> Result<Value, SpaceError> {
    phi.validate(components.len())?;
    let mut values = Vec::with_capacity(components.len());
    for (model, v) in components {
        values.push(norm(model, v, tolerance)?);
    }
    Ok(phi.apply(&values, tolerance))
}

/// Exact chain norm of `(t, x_1, ..., x_n)` with every `x_j` in l1^d:
/// the max of `||x_k||_1 + sum_{j>k} ||x_j||_inf` over `k` and of
/// `|t| + sum_j ||x_j||_inf`.
pub fn chain_norm(t: &Rat, xs: &[Vec<Rat>]) -> Rat {
    let n = xs.len();
    let dim = xs.first().map_or(0, Vec::len);
    let mut flat = Vec::with_capacity(1 + n * dim);
    flat.push(t.clone());
    for x in xs {
        assert_eq!(x.len(), dim, "chain components must share a dimension");
        flat.extend(x.iter().cloned());
    }
    chain_norm_exact(n, dim, &flat)
}

fn chain_norm_exact(n: usize, dim: usize, flat: &[Rat]) -> Rat {
    let t = &flat[0];
    let l1 = |k: usize| -> Rat {
        flat[1 + k * dim..1 + (k + 1) * dim]
            .iter()
            .fold(Rat::zero(), |a, c| a + c.abs())
    };
    let linf = |k: usize| -> Rat {
        flat[1 + k * dim..1 + (k + 1) * dim]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    };
    let mut sup_tail = Rat::zero(); // sum_{j>k} ||x_j||_inf, built backwards
    let mut best = if n > 0 { l1(n - 1) } else { Rat::zero() };
    for k in (0..n).rev() {
        let cand = l1(k) + &sup_tail;
        if cand > best {
            best = cand;
        }
        sup_tail += linf(k);
    }
    let cand = t.abs() + &sup_tail;
    if cand > best {
        best = cand;
    }
    best
}

// ---------------------------------------------------------------------------
// Value folding helpers
// ---------------------------------------------------------------------------

/// Sum of nonnegative values, keeping the tightest available form.
pub fn value_sum(values: &[Value], tolerance: &Rat) -> Value {
    let mut rational = Rat::zero();
    let mut irrational: Vec<&Value> = Vec::new();
    for v in values {
        match v {
            Value::Rational(r) => rational += r,
            other => irrational.push(other),
        }
    }
    match irrational.len() {
        0 => Value::rational(rational),
        1 if rational.is_zero() => irrational[0].clone(),
        _ => {
            let per = tolerance / rat_int((irrational.len() + 1) as i64);
            let mut acc = Enclosure::exact(rational);
            for v in irrational {
                acc = acc.add(&v.enclosure(&per));
            }
            Value::enclosed(acc)
        }
    }
}

/// Maximum of values; exact comparisons where both forms allow, a merged
/// enclosure otherwise.
pub fn value_max(values: &[Value], tolerance: &Rat) -> Value {
    let mut best: Option<Value> = None;
    for v in values {
        best = Some(match best {
            None => v.clone(),
            Some(b) => match b.cmp_certified(v, tolerance) {
                Some(Ordering::Less) => v.clone(),
                Some(_) => b,
                None => {
                    let eb = b.enclosure(tolerance);
                    let ev = v.enclosure(tolerance);
                    Value::enclosed(Enclosure::new(
                        eb.lo().clone().max(ev.lo().clone()),
                        eb.hi().clone().max(ev.hi().clone()),
                    ))
                }
            },
        });
    }
    best.unwrap_or_else(Value::zero)
}

/// Minimum of values, with the same comparison discipline as `value_max`.
pub fn value_min(values: &[Value], tolerance: &Rat) -> Value {
    let mut best: Option<Value> = None;
    for v in values {
        best = Some(match best {
            None => v.clone(),
            Some(b) => match b.cmp_certified(v, tolerance) {
                Some(Ordering::Greater) => v.clone(),
                Some(_) => b,
                None => {
                    let eb = b.enclosure(tolerance);
                    let ev = v.enclosure(tolerance);
                    Value::enclosed(Enclosure::new(
                        eb.lo().clone().min(ev.lo().clone()),
                        eb.hi().clone().min(ev.hi().clone()),
                    ))
                }
            },
        });
    }
    best.unwrap_or_else(Value::zero)
}

// ---------------------------------------------------------------------------
// Epigraph encodings for the orthant LPs
// ---------------------------------------------------------------------------

fn negate(e: &LinExpr) -> LinExpr {
    e.iter().map(|(v, c)| (*v, -c.clone())).collect()
}

fn abs_var(b: &mut LpBuilder, e: &LinExpr) -> usize {
    let s = b.add_var(Some(Rat::zero()), None);
    let mut up = e.clone();
    up.push((s, rat_int(-1)));
    b.constrain(up, Relation::Le, Rat::zero());
    let mut down = negate(e);
    down.push((s, rat_int(-1)));
    b.constrain(down, Relation::Le, Rat::zero());
    s
}

/// Encodes `norm(coords) <= returned expression` with equality at any
/// minimizing solution, for a polyhedral model whose coordinates are the
/// given affine expressions of existing LP variables.
pub fn polyhedral_epigraph(
    model: &NormModel,
    b: &mut LpBuilder,
    exprs: &[LinExpr],
) -> Result<LinExpr, SpaceError> {
    assert_eq!(exprs.len(), model.dim());
    match model {
        NormModel::L1Real(_) => {
            let mut out = LinExpr::new();
            for e in exprs {
                out.push((abs_var(b, e), rat_int(1)));
            }
            Ok(out)
        }
        // Real coefficients make the sign-pattern sup collapse to l1.
        NormModel::SignSup(_) => {
            let mut out = LinExpr::new();
            for e in exprs {
                out.push((abs_var(b, e), rat_int(1)));
            }
            Ok(out)
        }
        NormModel::LinfReal(_) => {
            let v = b.add_var(Some(Rat::zero()), None);
            for e in exprs {
                let mut up = e.clone();
                up.push((v, rat_int(-1)));
                b.constrain(up, Relation::Le, Rat::zero());
                let mut down = negate(e);
                down.push((v, rat_int(-1)));
                b.constrain(down, Relation::Le, Rat::zero());
            }
            Ok(vec![(v, rat_int(1))])
        }
        NormModel::FreeSpace(space) => {
            let n = space.points();
            let mut flow = vec![vec![usize::MAX; n]; n];
            let mut cost = LinExpr::new();
            for u in 0..n {
                for w in 0..n {
                    if u != w {
                        let f = b.add_var(Some(Rat::zero()), None);
                        flow[u][w] = f;
                        cost.push((f, space.dist(u, w).clone()));
                    }
                }
            }
            for (i, &p) in space.support_points().iter().enumerate() {
                // net outflow of p equals its (affine) coefficient
                let mut row = LinExpr::new();
                for w in 0..n {
                    if w != p {
                        row.push((flow[p][w], rat_int(1)));
                        row.push((flow[w][p], rat_int(-1)));
                    }
                }
                row.extend(negate(&exprs[i]));
                b.constrain(row, Relation::Eq, Rat::zero());
            }
            Ok(cost)
        }
        NormModel::ChainNorm { components, dim } => {
            let n = *components;
            let d = *dim;
            let big = b.add_var(Some(Rat::zero()), None);
            let t_abs = abs_var(b, &exprs[0]);
            let mut coord_abs = vec![vec![0usize; d]; n];
            let mut sup_vars = vec![0usize; n];
            for k in 0..n {
                for c in 0..d {
                    coord_abs[k][c] = abs_var(b, &exprs[1 + k * d + c]);
                }
                let v = b.add_var(Some(Rat::zero()), None);
                for c in 0..d {
                    b.constrain(
                        vec![(coord_abs[k][c], rat_int(1)), (v, rat_int(-1))],
                        Relation::Le,
                        Rat::zero(),
                    );
                }
                sup_vars[k] = v;
            }
            for k in 0..n {
                let mut row: LinExpr = (0..d).map(|c| (coord_abs[k][c], rat_int(1))).collect();
                for j in (k + 1)..n {
                    row.push((sup_vars[j], rat_int(1)));
                }
                row.push((big, rat_int(-1)));
                b.constrain(row, Relation::Le, Rat::zero());
            }
            let mut row: LinExpr = vec![(t_abs, rat_int(1))];
            for j in 0..n {
                row.push((sup_vars[j], rat_int(1)));
            }
            row.push((big, rat_int(-1)));
            b.constrain(row, Relation::Le, Rat::zero());
            Ok(vec![(big, rat_int(1))])
        }
        _ => Err(SpaceError::NonPolyhedral),
    }
}

/// Encodes a polyhedral minorant of a complex model over realified
/// coordinates: the returned expression `T` satisfies, at any minimizer,
/// `T / sqrt(2) <= ||v||` for the complex vector with the given real and
/// imaginary coordinate expressions. Used for certified complex lower bounds.
pub fn complex_minorant_epigraph(
    model: &NormModel,
    b: &mut LpBuilder,
    re_exprs: &[LinExpr],
    im_exprs: &[LinExpr],
) -> Result<LinExpr, SpaceError> {
    assert_eq!(re_exprs.len(), model.dim());
    assert_eq!(im_exprs.len(), model.dim());
    match model {
        NormModel::L1Complex(_) => {
            // |z| >= (|Re z| + |Im z|) / sqrt(2), coordinatewise.
            let mut out = LinExpr::new();
            for e in re_exprs.iter().chain(im_exprs) {
                out.push((abs_var(b, e), rat_int(1)));
            }
            Ok(out)
        }
        NormModel::SignSup(d) | NormModel::ComplexifiedL1(d) => {
            // value >= max_s (|sum s re| + |sum s im|) / sqrt(2):
            // one constraint per (pattern, relative sign of the two sums).
            if *d > 16 {
                return Err(SpaceError::DimensionTooLarge { got: *d, max: 16 });
            }
            let t = b.add_var(Some(Rat::zero()), None);
            for mask in 0u32..(1u32 << *d) {
                for flip in [false, true] {
                    let mut row = LinExpr::new();
                    for j in 0..*d {
                        let s = if mask & (1 << j) != 0 {
                            rat_int(-1)
                        } else {
                            rat_int(1)
                        };
                        for (v, c) in &re_exprs[j] {
                            row.push((*v, c * &s));
                        }
                        let si = if flip { -s.clone() } else { s.clone() };
                        for (v, c) in &im_exprs[j] {
                            row.push((*v, c * &si));
                        }
                    }
                    row.push((t, rat_int(-1)));
                    b.constrain(row, Relation::Le, Rat::zero());
                }
            }
            Ok(vec![(t, rat_int(1))])
        }
        _ => Err(SpaceError::NonPolyhedral),
    }
}
