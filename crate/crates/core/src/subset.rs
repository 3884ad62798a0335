//! Subset selection for complex sums: pick `I` maximizing `|sum_I lambda|`.
//!
//! The constructive route enumerates half-plane candidates: the optimal
//! subset always equals a strict half-plane `{k : Re(lambda_k conj(mu)) > 0}`
//! with normal `mu` equal to its own sum, so sweeping the critical directions
//! `+-i*lambda_j` (where membership flips) together with their boundary
//! variants covers every candidate. A 2^m brute force serves as the oracle,
//! and the roots-of-unity family witnesses how small the achievable ratio
//! `|sum_I| / sum|lambda|` can get.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::num::{
    angle_cmp, pi_enclosure, rat, rat_int, sin_enclosure, sqrt_enclosure, ComplexRat, Enclosure,
    Rat, Value,
};

/// Outcome of a selection: the chosen index set, its exact complex sum, the
/// total `sum |lambda_j|` and the achieved ratio `|sum| / total`.
#[derive(Clone, Debug)]
pub struct SelectionResult {
    pub subset: Vec<usize>,
    pub subset_sum: ComplexRat,
    /// `sum_j |lambda_j|` (exact 0 when all entries vanish).
    pub total: Value,
    /// `|subset sum| / total`; defined as exactly 1 on all-zero input.
    pub ratio: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetError {
    EmptyInput,
    TooManyEntries { got: usize, max: usize },
}

impl core::fmt::Display for SubsetError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SubsetError::EmptyInput => write!(f, "input list is empty"),
            SubsetError::TooManyEntries { got, max } => {
                write!(f, "{got} entries exceed the enumeration cap of {max}")
            }
        }
    }
}

const BRUTE_FORCE_CAP: usize = 20;

fn total_modulus(lambda: &[ComplexRat], tolerance: &Rat) -> Value {
    let nonzero: Vec<&ComplexRat> = lambda.iter().filter(|z| !z.is_zero()).collect();
    if nonzero.is_empty() {
        return Value::zero();
    }
    // Sum of square roots: exact only when every term collapses.
    let mut exact_sum = Some(Rat::zero());
    for z in &nonzero {
        match (exact_sum.take(), z.modulus()) {
            (Some(acc), Value::Rational(r)) => exact_sum = Some(acc + r),
            _ => {
                exact_sum = None;
                break;
            }
        }
    }
    if let Some(total) = exact_sum {
        return Value::rational(total);
    }
    let per_term = tolerance / rat_int(nonzero.len() as i64);
    let mut acc = Enclosure::exact(Rat::zero());
    for z in &nonzero {
        acc = acc.add(&sqrt_enclosure(&z.modulus_sq(), &per_term));
    }
    Value::enclosed(acc)
}

fn ratio_of(sum: &ComplexRat, total: &Value, tolerance: &Rat) -> Value {
    if total.is_zero() {
        return Value::rational(rat_int(1));
    }
    if let Value::Rational(t) = total {
        // |sum|/t = sqrt(|sum|^2 / t^2), keeps the exact square-root form.
        return Value::sqrt_rational(sum.modulus_sq() / (t * t));
    }
    let num = sqrt_enclosure(&sum.modulus_sq(), tolerance);
    Value::enclosed(num.div_pos(&total.enclosure(tolerance)))
}

/// All candidate half-plane subsets at a critical direction `w`: strict,
/// entering (just counterclockwise of the boundary), leaving, and closed.
fn candidate_subsets(lambda: &[ComplexRat], w: &ComplexRat) -> [Vec<usize>; 4] {
    let mut strict = Vec::new();
    let mut after = Vec::new();
    let mut before = Vec::new();
    let mut closed = Vec::new();
    let iw = w.rot90();
    for (k, z) in lambda.iter().enumerate() {
        if z.is_zero() {
            continue; // zeros never help and keep subsets canonical
        }
        let d = z.dot(w);
        if d.is_positive() {
            strict.push(k);
            after.push(k);
            before.push(k);
            closed.push(k);
        } else if d.is_zero() {
            closed.push(k);
            // On the boundary: z = c*(i*w); it enters the open half-plane
            // just after w when c > 0 and leaves just before w when c < 0.
            let c_sign = if iw.re.is_zero() {
                z.im.clone() * iw.im.signum()
            } else {
                z.re.clone() * iw.re.signum()
            };
            if c_sign.is_positive() {
                after.push(k);
            } else {
                before.push(k);
            }
        }
    }
    [strict, after, before, closed]
}

/// Constructive subset selection by half-plane enumeration. The returned
/// subset attains the global maximum of `|sum_I lambda|` over all subsets;
/// ties are broken by the smallest critical angle, then by candidate order.
pub fn halfplane_select(
    lambda: &[ComplexRat],
    tolerance: &Rat,
) -> Result<SelectionResult, SubsetError> {
    if lambda.is_empty() {
        return Err(SubsetError::EmptyInput);
    }
    let total = total_modulus(lambda, tolerance);
    if total.is_zero() {
        return Ok(SelectionResult {
            subset: Vec::new(),
            subset_sum: ComplexRat::zero(),
            total,
            ratio: Value::rational(rat_int(1)),
        });
    }

    // Critical directions +-i*lambda_j, sorted by angle and deduplicated.
    let mut directions: Vec<ComplexRat> = Vec::new();
    for z in lambda.iter().filter(|z| !z.is_zero()) {
        directions.push(z.rot90());
        directions.push(z.rot90().neg());
    }
    directions.sort_by(angle_cmp);
    directions.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);

    let mut best: Option<(Rat, Vec<usize>, ComplexRat)> = None;
    for w in &directions {
        for subset in candidate_subsets(lambda, w) {
            let sum = subset
                .iter()
                .fold(ComplexRat::zero(), |acc, &k| acc.add(&lambda[k]));
            let value_sq = sum.modulus_sq();
            let better = match &best {
                None => true,
                Some((best_sq, _, _)) => value_sq > *best_sq,
            };
            if better {
                best = Some((value_sq, subset, sum));
            }
        }
    }
    let (_, subset, subset_sum) = best.expect("nonzero input yields candidates");
    let ratio = ratio_of(&subset_sum, &total, tolerance);
    Ok(SelectionResult {
        subset,
        subset_sum,
        total,
        ratio,
    })
}

/// Exhaustive oracle: the exact maximizer of `|sum_I lambda|` over all `2^m`
/// subsets, with ties resolved to the lexicographically smallest index set.
/// Zeros are excluded from the reported subset.
pub fn best_subset_bruteforce(
    lambda: &[ComplexRat],
) -> Result<(Vec<usize>, ComplexRat), SubsetError> {
    let m = lambda.len();
    if m == 0 {
        return Err(SubsetError::EmptyInput);
    }
    if m > BRUTE_FORCE_CAP {
        return Err(SubsetError::TooManyEntries {
            got: m,
            max: BRUTE_FORCE_CAP,
        });
    }
    let mut best_sq = Rat::zero();
    let mut best_mask: u32 = 0;
    let mut sum = ComplexRat::zero();
    let mut mask: u32 = 0;
    // Gray-code walk: one add or subtract per visited subset.
    for g in 1u32..(1u32 << m) {
        let bit = g.trailing_zeros() as usize;
        if mask & (1 << bit) == 0 {
            sum = sum.add(&lambda[bit]);
            mask |= 1 << bit;
        } else {
            sum = sum.sub(&lambda[bit]);
            mask &= !(1 << bit);
        }
        let value_sq = sum.modulus_sq();
        let effective = effective_mask(mask, lambda);
        match value_sq.cmp(&best_sq) {
            Ordering::Greater => {
                best_sq = value_sq;
                best_mask = effective;
            }
            Ordering::Equal => {
                if lex_smaller(effective, best_mask) {
                    best_mask = effective;
                }
            }
            Ordering::Less => {}
        }
    }
    let subset: Vec<usize> = (0..m).filter(|&k| best_mask & (1 << k) != 0).collect();
    let subset_sum = subset
        .iter()
        .fold(ComplexRat::zero(), |acc, &k| acc.add(&lambda[k]));
    Ok((subset, subset_sum))
}

fn effective_mask(mask: u32, lambda: &[ComplexRat]) -> u32 {
    let mut out = 0;
    for (k, z) in lambda.iter().enumerate() {
        if mask & (1 << k) != 0 && !z.is_zero() {
            out |= 1 << k;
        }
    }
    out
}

/// Lexicographic order on the sorted index sequences the masks describe:
/// smaller first element wins, then the next, with a prefix preceding its
/// extensions.
fn lex_smaller(a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let mut x = a;
    let mut y = b;
    loop {
        match (x.trailing_zeros(), y.trailing_zeros()) {
            (32, _) => return true,  // a exhausted first: prefix
            (_, 32) => return false, // b exhausted first
            (i, j) if i != j => return i < j,
            (i, _) => {
                x &= !(1 << i);
                y &= !(1 << i);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Roots-of-unity witness family
// ---------------------------------------------------------------------------

/// The `2n` points `e^{i j pi / n}` with the exact best subset value
/// `2 / |1 - e^{i pi / n}| = 1 / sin(pi / 2n)` and the ratio
/// `(1/n) / |1 - e^{i pi / n}|`, both as certified enclosures. The optimal
/// subset is a closed half-circle of `n` consecutive points.
#[derive(Clone, Debug)]
pub struct RootsWitness {
    pub n: u32,
    pub best_value: Enclosure,
    pub ratio: Enclosure,
}

impl RootsWitness {
    /// Rational approximations of the `2n` points, each within `tolerance`
    /// of the exact root of unity in both coordinates.
    pub fn points_approx(&self, tolerance: &Rat) -> Vec<ComplexRat> {
        roots_points_approx(self.n, tolerance)
    }
}

/// Builds the stage-`n` witness with bounds certified to `tolerance`.
pub fn roots_witness(n: u32, tolerance: &Rat) -> RootsWitness {
    assert!(n >= 1);
    let inner = tolerance / rat_int(64);
    // best = 1 / sin(pi / 2n): sin is evaluated on [0, pi/2].
    let pi = pi_enclosure(&inner);
    let half_angle = pi.scale(&Rat::new(1.into(), (2 * n as i64).into()));
    let s = sin_enclosure(&half_angle, &inner);
    let one = Enclosure::exact(rat_int(1));
    let best_value = one.div_pos(&s);
    let ratio = best_value.scale(&rat(1, 2 * n as i64));
    RootsWitness {
        n,
        best_value,
        ratio,
    }
}

/// cos/sin of `j*pi/n` for `j = 0..2n-1`, as rational midpoints of certified
/// enclosures (error below `tolerance` per coordinate). Exact for the axis
/// points.
fn roots_points_approx(n: u32, tolerance: &Rat) -> Vec<ComplexRat> {
    let inner = tolerance / rat_int(16);
    let pi = pi_enclosure(&inner);
    let mut points = Vec::with_capacity(2 * n as usize);
    for j in 0..(2 * n) {
        points.push(unit_point(&pi, j, n, &inner));
    }
    points
}

/// `e^{i j pi / n}` via quadrant reduction so the sine argument stays in
/// `[0, pi/2]`.
fn unit_point(pi: &Enclosure, j: u32, n: u32, tolerance: &Rat) -> ComplexRat {
    // Angle j*pi/n; write j/n = q/2 + r with q quadrants (q = floor(2j/n)).
    let two_j = 2 * j;
    let q = (two_j / n) % 4;
    let rem = two_j % n; // angle remainder = rem * pi / (2n)
    let (cos_t, sin_t) = if rem == 0 {
        // Axis point: exact.
        (rat_int(1), rat_int(0))
    } else {
        let theta = pi.scale(&Rat::new((rem as i64).into(), (2 * n as i64).into()));
        // sin(theta) and cos(theta) = sin(pi/2 - theta), both args in [0, pi/2].
        // Snap to the tolerance grid: Taylor partial sums carry enormous
        // exact denominators which would otherwise poison every later sum.
        let sin_t = snap(&sin_enclosure(&theta, tolerance).midpoint(), tolerance);
        let co_angle = pi.scale(&rat(1, 2)).sub(&theta);
        let cos_t = snap(&sin_enclosure(&co_angle, tolerance).midpoint(), tolerance);
        (cos_t, sin_t)
    };
    let (re, im) = match q {
        0 => (cos_t, sin_t),
        1 => (-sin_t, cos_t),
        2 => (-cos_t, -sin_t),
        _ => (sin_t, -cos_t),
    };
    ComplexRat::new(re, im)
}

/// Rounds toward zero onto the multiples of `grid`.
fn snap(x: &Rat, grid: &Rat) -> Rat {
    (x / grid).trunc() * grid
}

/// True when the index set is a circular run of consecutive residues mod `m`.
pub fn is_circular_interval(subset: &[usize], m: usize) -> bool {
    if subset.is_empty() || subset.len() == m {
        return true;
    }
    let mut member = vec![false; m];
    for &k in subset {
        member[k] = true;
    }
    // Count boundaries between member and non-member; an interval has exactly 2.
    let boundaries = (0..m).filter(|&k| member[k] != member[(k + 1) % m]).count();
    boundaries == 2
}
