//! Finite metric spaces, graph shortest-path metrics, and the free-space
//! (Kantorovich-Rubinstein) norm of finitely supported measures, computed two
//! independent ways: a transportation primal (min-cost flow) and a
//! Lipschitz-ball dual (LP over pairwise constraints). Strong duality makes
//! the two mutual oracles, and both stay in exact rationals.

pub mod certify;
pub mod examples;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::num::Rat;
use crate::optim::{
    lp_solve, min_cost_flow, Arc, FlowNetwork, LinearProgram, LpResult, Relation, Sense,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricError {
    NotSquare,
    NonZeroDiagonal { point: usize },
    Asymmetric { x: usize, y: usize },
    NonPositive { x: usize, y: usize },
    TriangleViolation { x: usize, y: usize, z: usize },
    BaseOutOfRange,
    DisconnectedGraph,
    BadEdge { from: usize, to: usize },
    ShapeMismatch,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::NotSquare => write!(f, "distance matrix is not square"),
            MetricError::NonZeroDiagonal { point } => {
                write!(f, "d(x,x) != 0 at point {point}")
            }
            MetricError::Asymmetric { x, y } => write!(f, "d({x},{y}) != d({y},{x})"),
            MetricError::NonPositive { x, y } => {
                write!(f, "d({x},{y}) <= 0 for distinct points")
            }
            MetricError::TriangleViolation { x, y, z } => {
                write!(f, "triangle inequality fails on ({x},{y},{z})")
            }
            MetricError::BaseOutOfRange => write!(f, "base point index out of range"),
            MetricError::DisconnectedGraph => write!(f, "graph is not connected"),
            MetricError::BadEdge { from, to } => write!(f, "invalid edge ({from},{to})"),
            MetricError::ShapeMismatch => write!(f, "vector does not fit the space"),
        }
    }
}

/// A finite metric space with a distinguished base point. Construction
/// verifies every metric axiom exactly, including all triangle triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    d: Vec<Vec<Rat>>,
    base: usize,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, d: Vec<Vec<Rat>>, base: usize) -> Result<Self, MetricError> {
        let n = labels.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(MetricError::NotSquare);
        }
        if base >= n {
            return Err(MetricError::BaseOutOfRange);
        }
        for x in 0..n {
            if !d[x][x].is_zero() {
                return Err(MetricError::NonZeroDiagonal { point: x });
            }
            for y in (x + 1)..n {
                if d[x][y] != d[y][x] {
                    return Err(MetricError::Asymmetric { x, y });
                }
                if !d[x][y].is_positive() {
                    return Err(MetricError::NonPositive { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    if d[x][y] > &d[x][z] + &d[z][y] {
                        return Err(MetricError::TriangleViolation { x, y, z });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, d, base })
    }

    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, x: usize, y: usize) -> &Rat {
        &self.d[x][y]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Point indices other than the base, in label order; this fixes the
    /// coordinate order of `FreeVector`s over the space.
    pub fn support_points(&self) -> Vec<usize> {
        (0..self.points()).filter(|&i| i != self.base).collect()
    }

    /// The subspace on `keep` (which must contain the base), with the metric
    /// restricted. Coordinates of vectors supported inside carry over.
    pub fn restrict(&self, keep: &[usize]) -> Result<FiniteMetricSpace, MetricError> {
        if !keep.contains(&self.base) {
            return Err(MetricError::BaseOutOfRange);
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let d = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.d[i][j].clone()).collect())
            .collect();
        let base = keep.iter().position(|&i| i == self.base).unwrap();
        FiniteMetricSpace::new(labels, d, base)
    }

    /// Extends the space by a star point at the given radius from every
    /// existing point, and moves the base to the star. With `radius = b/2`
    /// for a space of diameter at most `b` this is the uniform slack point
    /// used by the two-sided free-norm sandwich.
    pub fn star_extension(&self, radius: &Rat) -> Result<FiniteMetricSpace, MetricError> {
        let n = self.points();
        let mut labels = self.labels.clone();
        labels.push(String::from("*"));
        let mut d: Vec<Vec<Rat>> = self
            .d
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(radius.clone());
                r
            })
            .collect();
        let mut star_row: Vec<Rat> = vec![radius.clone(); n];
        star_row.push(Rat::zero());
        d.push(star_row);
        FiniteMetricSpace::new(labels, d, n)
    }
}

/// Undirected simple graph; vertices are labeled, edges are unit length.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, MetricError> {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(MetricError::BadEdge { from: u, to: v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { labels, adj })
    }

    pub fn vertices(&self) -> usize {
        self.labels.len()
    }
}

/// Shortest-path metric of a connected graph via all-pairs BFS, with the
/// given vertex as base point. Distances are exact integers.
pub fn graph_metric(g: &Graph, base: usize) -> Result<FiniteMetricSpace, MetricError> {
    let n = g.vertices();
    if base >= n {
        return Err(MetricError::BaseOutOfRange);
    }
    let mut d = vec![vec![Rat::zero(); n]; n];
    let mut queue = Vec::with_capacity(n);
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &g.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push(v);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(MetricError::DisconnectedGraph);
        }
        for (v, &dv) in dist.iter().enumerate() {
            d[start][v] = crate::num::rat_int(dv as i64);
        }
    }
    FiniteMetricSpace::new(g.labels.clone(), d, base)
}

/// A finitely supported element `sum_x c_x delta(x)` of the free space over a
/// fixed metric space; one coefficient per non-base point, in
/// `support_points` order (the base carries no coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    pub coeffs: Vec<Rat>,
}

impl FreeVector {
    pub fn zero(space: &FiniteMetricSpace) -> Self {
        FreeVector {
            coeffs: vec![Rat::zero(); space.points() - 1],
        }
    }

    /// The unit atom at a non-base point (by label).
    pub fn delta(space: &FiniteMetricSpace, label: &str) -> Option<Self> {
        let idx = space.find_label(label)?;
        if idx == space.base() {
            return None;
        }
        let pos = space.support_points().iter().position(|&i| i == idx)?;
        let mut v = FreeVector::zero(space);
        v.coeffs[pos] = crate::num::rat_int(1);
        Some(v)
    }

    /// The evaluation functional at a point: the unit atom off the base, and
    /// the zero element at the base itself (every function vanishes there).
    pub fn atom(space: &FiniteMetricSpace, label: &str) -> Option<Self> {
        let idx = space.find_label(label)?;
        if idx == space.base() {
            Some(FreeVector::zero(space))
        } else {
            FreeVector::delta(space, label)
        }
    }

    pub fn conforms(&self, space: &FiniteMetricSpace) -> bool {
        self.coeffs.len() + 1 == space.points()
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FreeVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, by: &Rat) -> Self {
        FreeVector {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn l1_norm(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |acc, c| acc + c.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A rational-valued function on the points of a space, vanishing at the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipFunction {
    pub values: Vec<Rat>,
}

impl LipFunction {
    pub fn new(space: &FiniteMetricSpace, values: Vec<Rat>) -> Result<Self, MetricError> {
        if values.len() != space.points() {
            return Err(MetricError::ShapeMismatch);
        }
        if !values[space.base()].is_zero() {
            return Err(MetricError::ShapeMismatch);
        }
        Ok(LipFunction { values })
    }

    /// Builds from arbitrary values by shifting so the base value is zero.
    pub fn shifted(space: &FiniteMetricSpace, values: Vec<Rat>) -> Result<Self, MetricError> {
        if values.len() != space.points() {
            return Err(MetricError::ShapeMismatch);
        }
        let shift = values[space.base()].clone();
        Ok(LipFunction {
            values: values.into_iter().map(|v| v - &shift).collect(),
        })
    }

    /// The pairing `<f, mu> = sum_x c_x f(x)`.
    pub fn pair(&self, mu: &FreeVector, space: &FiniteMetricSpace) -> Rat {
        space
            .support_points()
            .iter()
            .zip(&mu.coeffs)
            .map(|(&p, c)| &self.values[p] * c)
            .fold(Rat::zero(), |acc, t| acc + t)
    }
}

/// Least Lipschitz constant: `max |f(x)-f(y)| / d(x,y)` over pairs, exact.
pub fn lip_constant(f: &LipFunction, space: &FiniteMetricSpace) -> Rat {
    let n = space.points();
    let mut best = Rat::zero();
    for x in 0..n {
        for y in (x + 1)..n {
            let q = (&f.values[x] - &f.values[y]).abs() / space.dist(x, y);
            if q > best {
                best = q;
            }
        }
    }
    best
}

/// Free norm by the transportation primal: route the signed coefficient mass
/// through the complete network (the base absorbs the imbalance) at cost
/// `d(x,y)` per unit, exactly.
pub fn free_norm_primal(mu: &FreeVector, space: &FiniteMetricSpace) -> Result<Rat, MetricError> {
    if !mu.conforms(space) {
        return Err(MetricError::ShapeMismatch);
    }
    let n = space.points();
    let mut supplies = vec![Rat::zero(); n];
    let mut total = Rat::zero();
    for (&p, c) in space.support_points().iter().zip(&mu.coeffs) {
        supplies[p] = c.clone();
        total += c;
    }
    supplies[space.base()] = -total;
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for x in 0..n {
        for y in 0..n {
            if x != y {
                arcs.push(Arc {
                    from: x,
                    to: y,
                    cost: space.dist(x, y).clone(),
                    capacity: None,
                });
            }
        }
    }
    let result = min_cost_flow(&FlowNetwork { supplies, arcs })
        .expect("complete balanced network is feasible");
    Ok(result.value)
}

/// Free norm by the Lipschitz-ball dual: `max sum c_x f(x)` over functions
/// with `f(base) = 0` and `|f(x)-f(y)| <= d(x,y)` for every unordered pair,
/// one two-sided constraint per pair. Strong LP duality makes this equal to
/// the primal, and the equality is asserted exactly by the test suites.
pub fn free_norm_dual(mu: &FreeVector, space: &FiniteMetricSpace) -> Result<Rat, MetricError> {
    if !mu.conforms(space) {
        return Err(MetricError::ShapeMismatch);
    }
    let support = space.support_points();
    let var_of = |p: usize| support.iter().position(|&q| q == p).unwrap();
    let nv = support.len();
    if nv == 0 {
        return Ok(Rat::zero());
    }
    let mut lp = LinearProgram::new(Sense::Maximize, mu.coeffs.clone());
    for (i, &x) in support.iter().enumerate() {
        // Pair (x, base): |f(x)| <= d(x, base).
        let mut row = vec![Rat::zero(); nv];
        row[i] = crate::num::rat_int(1);
        lp.add_constraint(
            row.clone(),
            Relation::Le,
            space.dist(x, space.base()).clone(),
        );
        row[i] = crate::num::rat_int(-1);
        lp.add_constraint(row, Relation::Le, space.dist(x, space.base()).clone());
    }
    for i in 0..support.len() {
        for j in (i + 1)..support.len() {
            let (x, y) = (support[i], support[j]);
            let mut row = vec![Rat::zero(); nv];
            row[var_of(x)] = crate::num::rat_int(1);
            row[var_of(y)] = crate::num::rat_int(-1);
            lp.add_constraint(row.clone(), Relation::Le, space.dist(x, y).clone());
            for c in &mut row {
                *c = -c.clone();
            }
            lp.add_constraint(row, Relation::Le, space.dist(x, y).clone());
        }
    }
    match lp_solve(&lp).expect("well-formed dual LP") {
        LpResult::Optimal { value, .. } => Ok(value),
        other => unreachable!("dual LP is feasible and bounded: {other:?}"),
    }
}
