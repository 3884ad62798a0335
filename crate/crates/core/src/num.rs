//! Exact scalar arithmetic: arbitrary-precision rationals, complex rationals,
//! certified enclosures for irrational values, and the handful of verified
//! transcendental evaluations (pi, sin, atan) the staged reports need.
//!
//! Everything here is deterministic and allocation-only (no IO, no floats).

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `10^-digits` as a rational, the usual way precision requests are phrased.
pub fn pow10_neg(digits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

fn sq(r: &Rat) -> Rat {
    r * r
}

/// Renders `r` as a decimal string with `digits` fractional digits,
/// truncated toward zero. Exact rationals survive the wire elsewhere;
/// this is only for human-facing output.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        alloc::format!("{sign}{int_part}")
    } else {
        alloc::format!("{sign}{int_part}.{frac}")
    }
}

// ---------------------------------------------------------------------------
// Complex rationals
// ---------------------------------------------------------------------------

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        ComplexRat { re, im }
    }

    pub fn zero() -> Self {
        ComplexRat::new(Rat::zero(), Rat::zero())
    }

    pub fn from_real(re: Rat) -> Self {
        ComplexRat::new(re, Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexRat::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexRat::new(&self.re - &other.re, &self.im - &other.im)
    }

    pub fn neg(&self) -> Self {
        ComplexRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn scale(&self, by: &Rat) -> Self {
        ComplexRat::new(&self.re * by, &self.im * by)
    }

    pub fn conj(&self) -> Self {
        ComplexRat::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplication by `i` (a quarter turn counterclockwise).
    pub fn rot90(&self) -> Self {
        ComplexRat::new(-self.im.clone(), self.re.clone())
    }

    /// `|z|^2`, exact.
    pub fn modulus_sq(&self) -> Rat {
        sq(&self.re) + sq(&self.im)
    }

    /// `Re(self * conj(other))`, the real inner product of the two plane vectors.
    pub fn dot(&self, other: &Self) -> Rat {
        &self.re * &other.re + &self.im * &other.im
    }

    /// `Im(conj(self) * other)`, the 2D cross product; positive when `other`
    /// lies counterclockwise of `self` within a half turn.
    pub fn cross(&self, other: &Self) -> Rat {
        &self.re * &other.im - &self.im * &other.re
    }

    /// `|z|` as an exact square-root value.
    pub fn modulus(&self) -> Value {
        Value::sqrt_rational(self.modulus_sq())
    }
}

/// Compares the arguments (angles in `[0, 2pi)`) of two nonzero complex
/// rationals exactly, via quadrant index plus cross-product sign.
pub fn angle_cmp(a: &ComplexRat, b: &ComplexRat) -> Ordering {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let qa = octant(a);
    let qb = octant(b);
    qa.cmp(&qb).then_with(|| {
        // Same octant: span is under a half turn, so the cross product decides.
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn octant(z: &ComplexRat) -> u8 {
    let xs = sign(&z.re);
    let ys = sign(&z.im);
    match (xs, ys) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => unreachable!("zero has no angle"),
    }
}

fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Enclosures
// ---------------------------------------------------------------------------

/// A certified enclosure `[lo, hi]` of a real number. Arithmetic on enclosures
/// is outward-rounding-free (rationals are exact), so every operation yields a
/// sound enclosure of the exact result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rat,
    hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn exact(r: Rat) -> Self {
        Enclosure {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Enclosure::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Enclosure::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        Enclosure::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn scale(&self, by: &Rat) -> Self {
        if by.is_negative() {
            Enclosure::new(&self.hi * by, &self.lo * by)
        } else {
            Enclosure::new(&self.lo * by, &self.hi * by)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    /// Division by an enclosure known to be strictly positive.
    pub fn div_pos(&self, other: &Self) -> Self {
        assert!(
            other.lo.is_positive(),
            "divisor enclosure not strictly positive"
        );
        Enclosure::new(&self.lo / &other.hi, &self.hi / &other.lo)
    }

    /// Certified comparison: `None` when the enclosures overlap.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.lo.cmp(&other.lo));
        }
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Distance from the enclosure to a target rational: an enclosure of
    /// `|value - target|`.
    pub fn abs_distance_to(&self, target: &Rat) -> Enclosure {
        let shifted = self.sub(&Enclosure::exact(target.clone()));
        shifted.abs()
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let bound = self.hi.clone().max(-self.lo.clone());
            Enclosure::new(Rat::zero(), bound)
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            decimal_string(&self.lo, 15),
            decimal_string(&self.hi, 15)
        )
    }
}

/// Floor of the square root of a nonnegative rational's scaled integer form,
/// giving `[lo, hi]` with `hi - lo <= tolerance`.
pub fn sqrt_enclosure(r: &Rat, tolerance: &Rat) -> Enclosure {
    assert!(!r.is_negative(), "square root of a negative rational");
    assert!(tolerance.is_positive());
    if r.is_zero() {
        return Enclosure::exact(Rat::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by t so the unit step 1/(q*t) <= tolerance.
    let p = r.numer().to_biguint().expect("nonnegative numerator");
    let q = r.denom().to_biguint().expect("positive denominator");
    // ceil(1 / (tolerance * q)) as a BigUint, at least 1.
    let t_num = tolerance.denom().to_biguint().unwrap();
    let t_den = tolerance.numer().to_biguint().unwrap() * &q;
    let t = (&t_num + &t_den - BigUint::one()) / &t_den;
    let t = if t.is_zero() { BigUint::one() } else { t };
    let radicand = &p * &q * &t * &t;
    let root = radicand.sqrt();
    let denom = BigInt::from(&q * &t);
    let lo = Rat::new(BigInt::from(root.clone()), denom.clone());
    let hi = Rat::new(BigInt::from(root + BigUint::one()), denom);
    // Tighten to exact when the radicand was a perfect square.
    if sq(&lo) == *r {
        Enclosure::exact(lo)
    } else {
        Enclosure::new(lo, hi)
    }
}

/// Certified enclosure of the p-th root of a nonnegative rational.
pub fn nth_root_enclosure(r: &Rat, p: u32, tolerance: &Rat) -> Enclosure {
    assert!(p >= 1 && !r.is_negative() && tolerance.is_positive());
    if p == 1 {
        return Enclosure::exact(r.clone());
    }
    if r.is_zero() {
        return Enclosure::exact(Rat::zero());
    }
    // root(a/q) = (a * q^{p-1})^{1/p} / q; scale by t so the step 1/(q t) fits.
    let a = r.numer().to_biguint().expect("nonnegative numerator");
    let q = r.denom().to_biguint().expect("positive denominator");
    let t_num = tolerance.denom().to_biguint().unwrap();
    let t_den = tolerance.numer().to_biguint().unwrap() * &q;
    let t = (&t_num + &t_den - BigUint::one()) / &t_den;
    let t = if t.is_zero() { BigUint::one() } else { t };
    let radicand = &a * q.pow(p - 1) * t.pow(p);
    let root = radicand.nth_root(p);
    let denom = BigInt::from(&q * &t);
    let lo = Rat::new(BigInt::from(root.clone()), denom.clone());
    let hi = Rat::new(BigInt::from(root + BigUint::one()), denom);
    if pow_rat(&lo, p) == *r {
        Enclosure::exact(lo)
    } else {
        Enclosure::new(lo, hi)
    }
}

/// `r^p` for a nonnegative integer exponent.
pub fn pow_rat(r: &Rat, p: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..p {
        acc *= r;
    }
    acc
}

/// Exact square root when the rational is a perfect square of a rational.
pub fn exact_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().to_biguint().unwrap();
    let q = r.denom().to_biguint().unwrap();
    let sp = p.sqrt();
    let sq_ = q.sqrt();
    if &sp * &sp == p && &sq_ * &sq_ == q {
        Some(Rat::new(BigInt::from(sp), BigInt::from(sq_)))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Values: exact where possible, enclosed otherwise
// ---------------------------------------------------------------------------

/// A nonnegative-or-signed real value in its tightest available form.
///
/// Norm evaluations produce rationals on polyhedral models and square roots of
/// rationals on the complexified / sign-pattern models; only genuinely
/// transcendental quantities degrade to plain enclosures. Keeping the exact
/// forms lets tests assert equality instead of closeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rat),
    /// The nonnegative square root of the stored rational.
    SqrtRational(Rat),
    Enclosed(Enclosure),
}

impl Value {
    pub fn zero() -> Self {
        Value::Rational(Rat::zero())
    }

    pub fn rational(r: Rat) -> Self {
        Value::Rational(r)
    }

    /// Builds `sqrt(radicand)`, collapsing to a rational when possible.
    pub fn sqrt_rational(radicand: Rat) -> Self {
        match exact_sqrt(&radicand) {
            Some(root) => Value::Rational(root),
            None => Value::SqrtRational(radicand),
        }
    }

    pub fn enclosed(e: Enclosure) -> Self {
        if e.is_exact() {
            Value::Rational(e.lo().clone())
        } else {
            Value::Enclosed(e)
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Value::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn expect_rational(&self) -> &Rat {
        self.as_rational().expect("value is not an exact rational")
    }

    pub fn enclosure(&self, tolerance: &Rat) -> Enclosure {
        match self {
            Value::Rational(r) => Enclosure::exact(r.clone()),
            Value::SqrtRational(q) => sqrt_enclosure(q, tolerance),
            Value::Enclosed(e) => e.clone(),
        }
    }

    /// Exact comparison whenever both sides have exact forms; certified
    /// interval comparison otherwise (`None` if the enclosures overlap).
    pub fn cmp_certified(&self, other: &Value, tolerance: &Rat) -> Option<Ordering> {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Some(a.cmp(b)),
            (Value::SqrtRational(a), Value::SqrtRational(b)) => Some(a.cmp(b)),
            (Value::Rational(a), Value::SqrtRational(b)) => Some(cmp_rat_vs_sqrt(a, b)),
            (Value::SqrtRational(a), Value::Rational(b)) => Some(cmp_rat_vs_sqrt(b, a).reverse()),
            _ => self
                .enclosure(tolerance)
                .cmp_certified(&other.enclosure(tolerance)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::SqrtRational(q) => q.is_zero(),
            Value::Enclosed(e) => e.is_exact() && e.lo().is_zero(),
        }
    }

    /// Reciprocal of a strictly positive value, keeping exact forms exact.
    pub fn recip(&self) -> Value {
        match self {
            Value::Rational(r) => {
                assert!(r.is_positive());
                Value::Rational(r.recip())
            }
            Value::SqrtRational(q) => {
                assert!(q.is_positive());
                Value::sqrt_rational(q.recip())
            }
            Value::Enclosed(e) => Value::enclosed(Enclosure::exact(Rat::one()).div_pos(e)),
        }
    }

    /// Scales by a positive rational, preserving exact forms.
    pub fn scale(&self, by: &Rat) -> Value {
        assert!(!by.is_negative());
        match self {
            Value::Rational(r) => Value::Rational(r * by),
            Value::SqrtRational(q) => Value::sqrt_rational(q * by * by),
            Value::Enclosed(e) => Value::enclosed(e.scale(by)),
        }
    }
}

fn cmp_rat_vs_sqrt(a: &Rat, radicand: &Rat) -> Ordering {
    // Compare a with sqrt(radicand), radicand >= 0.
    if a.is_negative() {
        return Ordering::Less;
    }
    sq(a).cmp(radicand)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::SqrtRational(q) => write!(f, "sqrt({q})"),
            Value::Enclosed(e) => write!(f, "{e}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Verified transcendental evaluations
// ---------------------------------------------------------------------------

/// Enclosure of `atan(1/x)` for integer `x >= 2`, via the alternating Taylor
/// series whose terms strictly decrease, so consecutive partial sums bracket
/// the limit.
fn atan_inv(x: u64, tolerance: &Rat) -> Enclosure {
    let inv = Rat::new(BigInt::one(), BigInt::from(x));
    let inv2 = sq(&inv);
    let mut term = inv.clone(); // x^{-(2k+1)} / (2k+1), starting at k = 0
    let mut power = inv;
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    loop {
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &inv2;
        k += 1;
        term = &power / rat_int((2 * k + 1) as i64);
        if term < *tolerance {
            break;
        }
    }
    // The limit lies between s_k and s_{k+1} = s_k -+ term.
    let next = if k.is_multiple_of(2) {
        &sum + &term
    } else {
        &sum - &term
    };
    let lo = next.clone().min(sum.clone());
    let hi = next.max(sum);
    Enclosure::new(lo, hi)
}

/// Certified enclosure of pi (Machin's formula).
pub fn pi_enclosure(tolerance: &Rat) -> Enclosure {
    let inner = tolerance / rat_int(64);
    let a = atan_inv(5, &inner);
    let b = atan_inv(239, &inner);
    a.scale(&rat_int(16)).sub(&b.scale(&rat_int(4)))
}

/// Enclosure of `sin(x)` for an exact rational `x` in `[0, 2]`, where the
/// alternating series terms decrease from the first term on.
fn sin_point(x: &Rat, tolerance: &Rat) -> Enclosure {
    assert!(!x.is_negative() && *x <= rat_int(2));
    if x.is_zero() {
        return Enclosure::exact(Rat::zero());
    }
    let x2 = sq(x);
    let mut term = x.clone();
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    loop {
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        k += 1;
        let denom = rat_int((2 * k) as i64) * rat_int((2 * k + 1) as i64);
        term = term * &x2 / denom;
        if term < *tolerance {
            break;
        }
    }
    let next = if k.is_multiple_of(2) {
        &sum + &term
    } else {
        &sum - &term
    };
    let lo = next.clone().min(sum.clone());
    let hi = next.max(sum);
    Enclosure::new(lo, hi)
}

/// Enclosure of `sin` over an enclosed argument inside `[0, pi/2]`, where the
/// sine is increasing, so the endpoint evaluations bracket the range.
pub fn sin_enclosure(x: &Enclosure, tolerance: &Rat) -> Enclosure {
    assert!(!x.lo().is_negative() && *x.hi() <= rat_int(2));
    let lo = sin_point(x.lo(), tolerance);
    let hi = sin_point(x.hi(), tolerance);
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

/// Approximates a real number known through an enclosure by a single rational
/// of controlled size (useful for feeding near-unit-circle points into exact
/// combinatorial searches).
pub fn rationalize(e: &Enclosure) -> Rat {
    e.midpoint()
}

/// Best-effort f64 view of a rational; display/debug only.
pub fn to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
