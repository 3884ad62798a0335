//! The two built-in example graphs over the integers, their closed-form
//! shortest-path metrics, the exact norm formulas they induce on the free
//! space, and the classification of 1-Lipschitz functions for the first one.
//!
//! `exlf`: vertices Z, edge when m != +-n; the metric is 1 except d(m,-m)=2.
//! `exlf3`: vertices Z\{0}, edge when mn < 0 and m != -n; the metric takes
//! values 1 (opposite signs), 2 (same sign), 3 (antipodal pair).
//!
//! Truncations keep the labels +-1..+-N (plus 0 for `exlf`) and inherit the
//! full closed-form metric; the test suites assert this coincides with the
//! truncated graph's own shortest paths at every usable stage.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::num::{rat_int, Rat};

use super::{FiniteMetricSpace, FreeVector, Graph, LipFunction};

/// Which built-in example a CLI command or certificate run refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleGraph {
    Exlf,
    Exlf3,
}

impl ExampleGraph {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleGraph::Exlf => "exlf",
            ExampleGraph::Exlf3 => "exlf3",
        }
    }

    pub fn space(&self, n: u32) -> FiniteMetricSpace {
        match self {
            ExampleGraph::Exlf => exlf_space(n),
            ExampleGraph::Exlf3 => exlf3_space(n),
        }
    }

    pub fn graph(&self, n: u32) -> Graph {
        match self {
            ExampleGraph::Exlf => exlf_graph(n),
            ExampleGraph::Exlf3 => exlf3_graph(n),
        }
    }

    pub fn closed_form(&self, m: i64, k: i64) -> i64 {
        match self {
            ExampleGraph::Exlf => exlf_distance(m, k),
            ExampleGraph::Exlf3 => exlf3_distance(m, k),
        }
    }
}

/// Vertex values of the `exlf` truncation: `0, 1, -1, ..., n, -n`.
pub fn exlf_values(n: u32) -> Vec<i64> {
    let mut vals = Vec::with_capacity(2 * n as usize + 1);
    vals.push(0);
    for k in 1..=n as i64 {
        vals.push(k);
        vals.push(-k);
    }
    vals
}

/// Vertex values of the `exlf3` truncation: `1, -1, ..., n, -n`.
pub fn exlf3_values(n: u32) -> Vec<i64> {
    let mut vals = Vec::with_capacity(2 * n as usize);
    for k in 1..=n as i64 {
        vals.push(k);
        vals.push(-k);
    }
    vals
}

fn labels_of(vals: &[i64]) -> Vec<String> {
    vals.iter().map(|v| format!("{v}")).collect()
}

/// Closed-form metric of the full `exlf` graph.
pub fn exlf_distance(m: i64, k: i64) -> i64 {
    if m == k {
        0
    } else if m == -k && m != 0 {
        2
    } else {
        1
    }
}

/// Closed-form metric of the full `exlf3` graph (arguments nonzero).
pub fn exlf3_distance(m: i64, k: i64) -> i64 {
    debug_assert!(m != 0 && k != 0);
    if m == k {
        0
    } else if m == -k {
        3
    } else if (m < 0) != (k < 0) {
        1
    } else {
        2
    }
}

fn space_from_values(
    vals: &[i64],
    dist: impl Fn(i64, i64) -> i64,
    base: usize,
) -> FiniteMetricSpace {
    let d = vals
        .iter()
        .map(|&a| vals.iter().map(|&b| rat_int(dist(a, b))).collect())
        .collect();
    FiniteMetricSpace::new(labels_of(vals), d, base).expect("closed-form example metric is valid")
}

/// Truncated `exlf` space on `{0} u +-{1..n}` with base point 0.
pub fn exlf_space(n: u32) -> FiniteMetricSpace {
    assert!(n >= 1);
    space_from_values(&exlf_values(n), exlf_distance, 0)
}

/// Truncated `exlf3` space on `+-{1..n}` with base point 1.
pub fn exlf3_space(n: u32) -> FiniteMetricSpace {
    assert!(n >= 2, "a single antipodal pair is not a valid truncation");
    space_from_values(&exlf3_values(n), exlf3_distance, 0)
}

/// Truncated 0-1 discrete space on `{0} u +-{1..n}` with base point 0
/// (the full-graph companion of `exlf`).
pub fn zero_one_space(n: u32) -> FiniteMetricSpace {
    assert!(n >= 1);
    space_from_values(&exlf_values(n), |a, b| i64::from(a != b), 0)
}

/// Truncated `exlf` graph: edge when m != +-k.
pub fn exlf_graph(n: u32) -> Graph {
    let vals = exlf_values(n);
    let mut edges = Vec::new();
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            if vals[i] != vals[j] && vals[i] != -vals[j] {
                edges.push((i, j));
            }
        }
    }
    Graph::new(labels_of(&vals), &edges).expect("valid edge list")
}

/// Truncated `exlf3` graph: edge when the signs differ and m != -k.
pub fn exlf3_graph(n: u32) -> Graph {
    let vals = exlf3_values(n);
    let mut edges = Vec::new();
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            let (a, b) = (vals[i], vals[j]);
            if (a < 0) != (b < 0) && a != -b {
                edges.push((i, j));
            }
        }
    }
    Graph::new(labels_of(&vals), &edges).expect("valid edge list")
}

/// Coefficient of a free vector over `exlf_space(n)` at the point labeled
/// `v` (nonzero). Support order is `1, -1, 2, -2, ...`.
fn exlf_coeff(mu: &FreeVector, v: i64) -> &Rat {
    let k = v.unsigned_abs() as usize;
    let idx = 2 * (k - 1) + usize::from(v < 0);
    &mu.coeffs[idx]
}

/// Exact closed-form free norm on the `exlf` truncation:
/// `max(||x+||_1, ||x-||_1, max_k (|x(k)| + |x(-k)|))`.
pub fn exlf_norm_formula(mu: &FreeVector, n: u32) -> Rat {
    assert_eq!(
        mu.coeffs.len(),
        2 * n as usize,
        "vector does not fit the truncation"
    );
    let mut pos = Rat::zero();
    let mut neg = Rat::zero();
    for c in &mu.coeffs {
        if c.is_positive() {
            pos += c;
        } else {
            neg -= c;
        }
    }
    let mut best = pos.max(neg);
    for k in 1..=n as i64 {
        let pair = exlf_coeff(mu, k).abs() + exlf_coeff(mu, -k).abs();
        if pair > best {
            best = pair;
        }
    }
    best
}

/// Exact closed-form free norm on the 0-1 discrete truncation:
/// `max(||x+||_1, ||x-||_1)`.
pub fn mprime_norm_formula(mu: &FreeVector) -> Rat {
    let mut pos = Rat::zero();
    let mut neg = Rat::zero();
    for c in &mu.coeffs {
        if c.is_positive() {
            pos += c;
        } else {
            neg -= c;
        }
    }
    pos.max(neg)
}

/// Classification of functions on the `exlf` truncation vanishing at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LipClassification {
    /// All values inside `[c-1, c]` for some `c` in `[0, 1]`.
    Type1 {
        c: Rat,
    },
    /// One antipodal pair stretched past 1: `f(n) = a`, `f(-n) = -b` with
    /// `a, b` in `(0, 1]`, `a + b > 1`, every other value in `[a-1, 1-b]`.
    Type2 {
        n: i64,
        a: Rat,
        b: Rat,
    },
    NotOneLipschitz,
}

/// Decides 1-Lipschitzness on `exlf_space(n)` structurally; agrees with
/// `lip_constant(f) <= 1` in both directions.
pub fn classify_lip_exlf(f: &LipFunction, n: u32) -> LipClassification {
    let count = 2 * n as usize + 1;
    assert_eq!(
        f.values.len(),
        count,
        "function does not fit the truncation"
    );
    let vals = &f.values; // order: 0, 1, -1, 2, -2, ...
    let value_of = |v: i64| -> &Rat {
        if v == 0 {
            &vals[0]
        } else {
            let k = v.unsigned_abs() as usize;
            &vals[2 * (k - 1) + usize::from(v < 0) + 1]
        }
    };
    let one = rat_int(1);
    let max_v = vals.iter().max().unwrap().clone();
    let min_v = vals.iter().min().unwrap().clone();
    if &max_v - &min_v <= one {
        // f(0) = 0 forces max_v >= 0, so c = max_v lands in [0, 1].
        if max_v <= one {
            return LipClassification::Type1 { c: max_v };
        }
        return LipClassification::NotOneLipschitz;
    }
    // Some pair is stretched past 1; only a single antipodal pair may be.
    let mut stretched: Option<i64> = None;
    for k in 1..=n as i64 {
        let gap = (value_of(k) - value_of(-k)).abs();
        if gap > one {
            if stretched.is_some() {
                return LipClassification::NotOneLipschitz;
            }
            stretched = Some(k);
        }
    }
    let Some(k) = stretched else {
        // max - min > 1 across a distance-1 pair.
        return LipClassification::NotOneLipschitz;
    };
    let (n_signed, a, b) = if value_of(k) >= value_of(-k) {
        (k, value_of(k).clone(), -value_of(-k).clone())
    } else {
        (-k, value_of(-k).clone(), -value_of(k).clone())
    };
    if !(a.is_positive() && b.is_positive() && a <= one && b <= one) {
        return LipClassification::NotOneLipschitz;
    }
    let lo = &a - &one;
    let hi = &one - &b;
    for v in exlf_values(n) {
        if v == n_signed || v == -n_signed {
            continue;
        }
        let fv = value_of(v);
        if fv < &lo || fv > &hi {
            return LipClassification::NotOneLipschitz;
        }
    }
    LipClassification::Type2 { n: n_signed, a, b }
}
