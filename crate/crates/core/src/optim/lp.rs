//! Dense exact-rational simplex.
//!
//! Two-phase method with Bland's anti-cycling pivot rule on a dense tableau.
//! Every arithmetic step stays in arbitrary-precision rationals, so the
//! reported optimum and primal solution are exact and deterministic for a
//! fixed input. Instances in this workspace stay within a few hundred rows;
//! no sparsity or scaling machinery is warranted.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::num::Rat;

/// Constraint relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Optimization sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Per-variable bounds. `None` means unbounded on that side.
#[derive(Clone, Debug, Default)]
pub struct VarBound {
    pub lower: Option<Rat>,
    pub upper: Option<Rat>,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

/// A linear program over rationals. Rows must match the objective length.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    ShapeMismatch {
        row: usize,
        expected: usize,
        got: usize,
    },
    EmptyObjective,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::ShapeMismatch { row, expected, got } => write!(
                f,
                "constraint row {row} has {got} coefficients, objective has {expected}"
            ),
            LpError::EmptyObjective => write!(f, "objective must have at least one variable"),
        }
    }
}

/// Solver outcome. When `Optimal`, the solution satisfies every constraint
/// exactly and attains the reported value exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn expect_optimal(&self) -> (&Rat, &[Rat]) {
        match self {
            LpResult::Optimal { value, solution } => (value, solution),
            other => panic!("expected optimal LP result, got {other:?}"),
        }
    }
}

impl LinearProgram {
    /// New program with all variables free.
    pub fn new(sense: Sense, objective: Vec<Rat>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBound::default(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_lower(&mut self, var: usize, lower: Rat) {
        self.bounds[var].lower = Some(lower);
    }

    pub fn set_upper(&mut self, var: usize, upper: Rat) {
        self.bounds[var].upper = Some(upper);
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.set_lower(var, Rat::zero());
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.objective.is_empty() {
            return Err(LpError::EmptyObjective);
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.objective.len() {
                return Err(LpError::ShapeMismatch {
                    row,
                    expected: self.objective.len(),
                    got: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates the objective at a point, exactly.
    pub fn objective_value(&self, point: &[Rat]) -> Rat {
        self.objective
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    /// Checks a point against every constraint and bound, exactly.
    pub fn is_feasible(&self, point: &[Rat]) -> bool {
        if point.len() != self.num_vars() {
            return false;
        }
        for c in &self.constraints {
            let lhs: Rat = c
                .coeffs
                .iter()
                .zip(point)
                .map(|(a, x)| a * x)
                .fold(Rat::zero(), |acc, t| acc + t);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            if !ok {
                return false;
            }
        }
        for (b, x) in self.bounds.iter().zip(point) {
            if let Some(l) = &b.lower {
                if x < l {
                    return false;
                }
            }
            if let Some(u) = &b.upper {
                if x > u {
                    return false;
                }
            }
        }
        true
    }
}

/// Solves the program. Infeasibility and unboundedness are reported through
/// the result status, never by failure.
pub fn lp_solve(p: &LinearProgram) -> Result<LpResult, LpError> {
    p.validate()?;
    let tableau = Standardized::build(p);
    Ok(tableau.solve(p))
}

/// A sparse linear form over LP variables.
pub type LinExpr = Vec<(usize, Rat)>;

/// Incremental construction of a program whose variable count grows as
/// auxiliary epigraph variables are introduced.
#[derive(Clone, Debug)]
pub struct LpBuilder {
    sense: Sense,
    bounds: Vec<VarBound>,
    objective: LinExpr,
    constraints: Vec<(LinExpr, Relation, Rat)>,
}

impl LpBuilder {
    pub fn new(sense: Sense) -> Self {
        LpBuilder {
            sense,
            bounds: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_var(&mut self, lower: Option<Rat>, upper: Option<Rat>) -> usize {
        self.bounds.push(VarBound { lower, upper });
        self.bounds.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn constrain(&mut self, terms: LinExpr, relation: Relation, rhs: Rat) {
        self.constraints.push((terms, relation, rhs));
    }

    pub fn add_objective(&mut self, terms: LinExpr) {
        self.objective.extend(terms);
    }

    pub fn build(&self) -> LinearProgram {
        let n = self.bounds.len();
        let mut objective = vec![Rat::zero(); n];
        for (v, c) in &self.objective {
            objective[*v] += c;
        }
        let mut lp = LinearProgram::new(self.sense, objective);
        lp.bounds = self.bounds.clone();
        for (terms, relation, rhs) in &self.constraints {
            let mut row = vec![Rat::zero(); n];
            for (v, c) in terms {
                row[*v] += c;
            }
            lp.add_constraint(row, *relation, rhs.clone());
        }
        lp
    }
}

// --- internal standard form -------------------------------------------------

/// Mapping from an original variable to standard-form columns.
#[derive(Clone, Debug)]
enum VarMap {
    /// x = shift + x', with x' the given column.
    Shifted { col: usize, shift: Rat },
    /// x = shift - x'.
    Negated { col: usize, shift: Rat },
    /// x = x+ - x- (free variable split).
    Split { pos: usize, neg: usize },
}

struct Standardized {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    relations: Vec<Relation>,
    /// Minimization costs over standard columns (sense folded in).
    costs: Vec<Rat>,
    var_map: Vec<VarMap>,
    num_cols: usize,
    trivially_infeasible: bool,
}

impl Standardized {
    fn build(p: &LinearProgram) -> Self {
        let n = p.num_vars();
        let mut var_map = Vec::with_capacity(n);
        let mut extra_rows: Vec<(usize, Rat)> = Vec::new(); // (col, upper residual) for boxed vars
        let mut num_cols = 0;
        let mut trivially_infeasible = false;
        for b in &p.bounds {
            match (&b.lower, &b.upper) {
                (Some(l), None) => {
                    var_map.push(VarMap::Shifted {
                        col: num_cols,
                        shift: l.clone(),
                    });
                    num_cols += 1;
                }
                (None, Some(u)) => {
                    var_map.push(VarMap::Negated {
                        col: num_cols,
                        shift: u.clone(),
                    });
                    num_cols += 1;
                }
                (Some(l), Some(u)) => {
                    if u < l {
                        trivially_infeasible = true;
                    }
                    var_map.push(VarMap::Shifted {
                        col: num_cols,
                        shift: l.clone(),
                    });
                    extra_rows.push((num_cols, u - l));
                    num_cols += 1;
                }
                (None, None) => {
                    var_map.push(VarMap::Split {
                        pos: num_cols,
                        neg: num_cols + 1,
                    });
                    num_cols += 2;
                }
            }
        }

        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut relations = Vec::new();
        for c in &p.constraints {
            let mut row = vec![Rat::zero(); num_cols];
            let mut b = c.rhs.clone();
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match &var_map[j] {
                    VarMap::Shifted { col, shift } => {
                        row[*col] += a;
                        b -= a * shift;
                    }
                    VarMap::Negated { col, shift } => {
                        row[*col] -= a;
                        b -= a * shift;
                    }
                    VarMap::Split { pos, neg } => {
                        row[*pos] += a;
                        row[*neg] -= a;
                    }
                }
            }
            rows.push(row);
            rhs.push(b);
            relations.push(c.relation);
        }
        for (col, residual) in extra_rows {
            let mut row = vec![Rat::zero(); num_cols];
            row[col] = Rat::one();
            rows.push(row);
            rhs.push(residual);
            relations.push(Relation::Le);
        }

        // Fold sense into costs (we always minimize).
        let mut costs = vec![Rat::zero(); num_cols];
        for (j, c) in p.objective.iter().enumerate() {
            let c = match p.sense {
                Sense::Minimize => c.clone(),
                Sense::Maximize => -c.clone(),
            };
            if c.is_zero() {
                continue;
            }
            match &var_map[j] {
                VarMap::Shifted { col, .. } => costs[*col] += &c,
                VarMap::Negated { col, .. } => costs[*col] -= &c,
                VarMap::Split { pos, neg } => {
                    costs[*pos] += &c;
                    costs[*neg] -= &c;
                }
            }
        }

        Standardized {
            rows,
            rhs,
            relations,
            costs,
            var_map,
            num_cols,
            trivially_infeasible,
        }
    }

    fn solve(mut self, original: &LinearProgram) -> LpResult {
        if self.trivially_infeasible {
            return LpResult::Infeasible;
        }
        // Normalize rhs >= 0.
        for i in 0..self.rows.len() {
            if self.rhs[i].is_negative() {
                for a in &mut self.rows[i] {
                    *a = -a.clone();
                }
                self.rhs[i] = -self.rhs[i].clone();
                self.relations[i] = match self.relations[i] {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }

        let m = self.rows.len();
        let structural = self.num_cols;
        // Count slack and artificial columns.
        let mut num_slack = 0;
        let mut num_artificial = 0;
        for rel in &self.relations {
            match rel {
                Relation::Le => num_slack += 1,
                Relation::Ge => {
                    num_slack += 1;
                    num_artificial += 1;
                }
                Relation::Eq => num_artificial += 1,
            }
        }
        let total = structural + num_slack + num_artificial;
        let art_start = structural + num_slack;

        let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut basis = vec![0usize; m];
        let mut slack_idx = structural;
        let mut art_idx = art_start;
        for i in 0..m {
            let mut row = vec![Rat::zero(); total];
            row[..structural].clone_from_slice(&self.rows[i]);
            match self.relations[i] {
                Relation::Le => {
                    row[slack_idx] = Rat::one();
                    basis[i] = slack_idx;
                    slack_idx += 1;
                }
                Relation::Ge => {
                    row[slack_idx] = -Rat::one();
                    slack_idx += 1;
                    row[art_idx] = Rat::one();
                    basis[i] = art_idx;
                    art_idx += 1;
                }
                Relation::Eq => {
                    row[art_idx] = Rat::one();
                    basis[i] = art_idx;
                    art_idx += 1;
                }
            }
            tab.push(row);
        }
        let mut b = self.rhs.clone();

        // Phase 1: minimize the sum of artificials.
        if num_artificial > 0 {
            let mut phase1 = vec![Rat::zero(); total];
            for j in art_start..total {
                phase1[j] = Rat::one();
            }
            let mut cost_row = reduced_costs(&phase1, &tab, &basis);
            let mut obj = basis
                .iter()
                .zip(&b)
                .filter(|(v, _)| **v >= art_start)
                .map(|(_, bi)| bi.clone())
                .fold(Rat::zero(), |acc, t| acc + t);
            if !simplex_loop(&mut tab, &mut b, &mut basis, &mut cost_row, &mut obj, total) {
                unreachable!("phase 1 is bounded below by zero");
            }
            if obj.is_positive() {
                return LpResult::Infeasible;
            }
            // Drive remaining artificials out of the basis; drop redundant rows.
            let mut keep = vec![true; tab.len()];
            for i in 0..tab.len() {
                if basis[i] >= art_start {
                    let pivot_col = (0..art_start).find(|&j| !tab[i][j].is_zero());
                    match pivot_col {
                        Some(j) => pivot(&mut tab, &mut b, &mut basis, i, j),
                        None => keep[i] = false, // all-zero row: redundant constraint
                    }
                }
            }
            let mut new_tab = Vec::new();
            let mut new_b = Vec::new();
            let mut new_basis = Vec::new();
            for i in 0..tab.len() {
                if keep[i] {
                    new_tab.push(core::mem::take(&mut tab[i]));
                    new_b.push(b[i].clone());
                    new_basis.push(basis[i]);
                }
            }
            tab = new_tab;
            b = new_b;
            basis = new_basis;
            // Ban artificial columns from re-entering by truncating them away.
            for row in &mut tab {
                row.truncate(art_start);
            }
        }

        let usable = art_start;
        // Phase 2.
        let mut phase2 = vec![Rat::zero(); usable];
        phase2[..structural].clone_from_slice(&self.costs);
        let mut cost_row = reduced_costs(&phase2, &tab, &basis);
        let mut obj = basis
            .iter()
            .zip(&b)
            .map(|(v, bi)| &phase2[*v] * bi)
            .fold(Rat::zero(), |acc, t| acc + t);
        if !simplex_loop(
            &mut tab,
            &mut b,
            &mut basis,
            &mut cost_row,
            &mut obj,
            usable,
        ) {
            return LpResult::Unbounded;
        }

        // Read the standard-form solution.
        let mut std_solution = vec![Rat::zero(); self.num_cols];
        for (i, &v) in basis.iter().enumerate() {
            if v < self.num_cols {
                std_solution[v] = b[i].clone();
            }
        }
        // Map back to the original variables.
        let mut solution = Vec::with_capacity(self.var_map.len());
        for vm in &self.var_map {
            let x = match vm {
                VarMap::Shifted { col, shift } => shift + &std_solution[*col],
                VarMap::Negated { col, shift } => shift - &std_solution[*col],
                VarMap::Split { pos, neg } => &std_solution[*pos] - &std_solution[*neg],
            };
            solution.push(x);
        }
        debug_assert!(original.is_feasible(&solution));
        // Report the value by direct substitution so it is exact by construction.
        let value = original.objective_value(&solution);
        LpResult::Optimal { value, solution }
    }
}

fn reduced_costs(costs: &[Rat], tab: &[Vec<Rat>], basis: &[usize]) -> Vec<Rat> {
    let total = costs.len();
    let mut row = costs.to_vec();
    for (i, &v) in basis.iter().enumerate() {
        if costs[v].is_zero() {
            continue;
        }
        let cb = costs[v].clone();
        for j in 0..total {
            if !tab[i][j].is_zero() {
                let delta = &cb * &tab[i][j];
                row[j] -= delta;
            }
        }
    }
    row
}

fn pivot(tab: &mut [Vec<Rat>], b: &mut [Rat], basis: &mut [usize], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for a in &mut tab[r] {
        *a = &*a / &p;
    }
    b[r] = &b[r] / &p;
    for i in 0..tab.len() {
        if i == r || tab[i][c].is_zero() {
            continue;
        }
        let factor = tab[i][c].clone();
        for j in 0..tab[i].len() {
            if !tab[r][j].is_zero() {
                let delta = &factor * &tab[r][j];
                tab[i][j] -= delta;
            }
        }
        let delta = &factor * &b[r];
        b[i] -= delta;
    }
    basis[r] = c;
}

/// Runs Bland-rule simplex iterations until optimality (`true`) or an
/// unbounded ray is detected (`false`). `cost_row` and `obj` are updated by
/// the same row operations as the tableau.
fn simplex_loop(
    tab: &mut [Vec<Rat>],
    b: &mut [Rat],
    basis: &mut [usize],
    cost_row: &mut [Rat],
    obj: &mut Rat,
    num_cols: usize,
) -> bool {
    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let entering = (0..num_cols).find(|&j| cost_row[j].is_negative());
        let Some(c) = entering else {
            return true;
        };
        // Ratio test; Bland tie-break on the smallest basis variable index.
        let mut best: Option<(Rat, usize)> = None;
        for i in 0..tab.len() {
            if tab[i][c].is_positive() {
                let ratio = &b[i] / &tab[i][c];
                match &best {
                    None => best = Some((ratio, i)),
                    Some((r0, i0)) => {
                        if ratio < *r0 || (ratio == *r0 && basis[i] < basis[*i0]) {
                            best = Some((ratio, i));
                        }
                    }
                }
            }
        }
        let Some((_, r)) = best else {
            return false;
        };
        pivot(tab, b, basis, r, c);
        // Update the cost row by the same elimination; the objective moves by
        // the reduced cost times the entering variable's new basic value.
        let factor = cost_row[c].clone();
        if !factor.is_zero() {
            for j in 0..num_cols {
                if !tab[r][j].is_zero() {
                    let delta = &factor * &tab[r][j];
                    cost_row[j] -= delta;
                }
            }
            let delta = &factor * &b[r];
            *obj += delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_int};

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn single_variable_bound() {
        // max x s.t. x <= 3, x >= 0 -> 3
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1]));
        p.add_constraint(rv(&[1]), Relation::Le, rat_int(3));
        p.set_nonnegative(0);
        let r = lp_solve(&p).unwrap();
        let (v, x) = r.expect_optimal();
        assert_eq!(*v, rat_int(3));
        assert_eq!(x[0], rat_int(3));
    }

    #[test]
    fn simplex_face() {
        // max x+y s.t. x+y <= 1, x,y >= 0 -> 1
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1, 1]));
        p.add_constraint(rv(&[1, 1]), Relation::Le, rat_int(1));
        p.set_nonnegative(0);
        p.set_nonnegative(1);
        let r = lp_solve(&p).unwrap();
        assert_eq!(*r.value().unwrap(), rat_int(1));
    }

    #[test]
    fn two_point_lipschitz_dual() {
        // max f(p) s.t. |f(p) - 0| <= 1 with f(p) free: the dual of the
        // free norm of a unit atom on a two-point space at distance 1.
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1]));
        p.add_constraint(rv(&[1]), Relation::Le, rat_int(1));
        p.add_constraint(rv(&[-1]), Relation::Le, rat_int(1));
        let r = lp_solve(&p).unwrap();
        assert_eq!(*r.value().unwrap(), rat_int(1));
    }

    #[test]
    fn detects_infeasible() {
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1]));
        p.add_constraint(rv(&[1]), Relation::Le, rat_int(1));
        p.add_constraint(rv(&[1]), Relation::Ge, rat_int(2));
        assert_eq!(lp_solve(&p).unwrap(), LpResult::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1]));
        p.set_nonnegative(0);
        assert_eq!(lp_solve(&p).unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // min x - y s.t. x + y = 2, x - y >= -4, y <= 3; x, y free.
        let mut p = LinearProgram::new(Sense::Minimize, rv(&[1, -1]));
        p.add_constraint(rv(&[1, 1]), Relation::Eq, rat_int(2));
        p.add_constraint(rv(&[1, -1]), Relation::Ge, rat_int(-4));
        p.add_constraint(rv(&[0, 1]), Relation::Le, rat_int(3));
        let r = lp_solve(&p).unwrap();
        let (v, x) = r.expect_optimal();
        assert_eq!(*v, rat_int(-4));
        assert_eq!(x, &[rat_int(-1), rat_int(3)]);
    }

    #[test]
    fn boxed_variables_and_fractional_optimum() {
        // max 3x + 2y s.t. x + y <= 7/2, x in [0, 2], y in [1/2, 3].
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[3, 2]));
        p.add_constraint(rv(&[1, 1]), Relation::Le, rat(7, 2));
        p.set_lower(0, rat_int(0));
        p.set_upper(0, rat_int(2));
        p.set_lower(1, rat(1, 2));
        p.set_upper(1, rat_int(3));
        let r = lp_solve(&p).unwrap();
        let (v, x) = r.expect_optimal();
        assert_eq!(x, &[rat_int(2), rat(3, 2)]);
        assert_eq!(*v, rat_int(9));
    }

    #[test]
    fn infeasible_box() {
        let mut p = LinearProgram::new(Sense::Maximize, rv(&[1]));
        p.set_lower(0, rat_int(2));
        p.set_upper(0, rat_int(1));
        assert_eq!(lp_solve(&p).unwrap(), LpResult::Infeasible);
    }

    #[test]
    fn reported_value_matches_substitution() {
        let mut p = LinearProgram::new(Sense::Minimize, rv(&[2, 1, -1]));
        p.add_constraint(rv(&[1, 1, 1]), Relation::Eq, rat_int(4));
        p.add_constraint(rv(&[1, -1, 0]), Relation::Ge, rat_int(-1));
        p.add_constraint(rv(&[0, 1, 2]), Relation::Le, rat_int(6));
        for v in 0..3 {
            p.set_nonnegative(v);
        }
        let r = lp_solve(&p).unwrap();
        let (v, x) = r.expect_optimal();
        assert!(p.is_feasible(x));
        assert_eq!(*v, p.objective_value(x));
    }

    #[test]
    fn degenerate_transportation_terminates() {
        // A degenerate equality system that would cycle without an
        // anti-cycling rule on unlucky pivot orders.
        let mut p = LinearProgram::new(Sense::Minimize, rv(&[1, 1, 1, 1]));
        p.add_constraint(rv(&[1, 1, 0, 0]), Relation::Eq, rat_int(1));
        p.add_constraint(rv(&[0, 0, 1, 1]), Relation::Eq, rat_int(1));
        p.add_constraint(rv(&[1, 0, 1, 0]), Relation::Eq, rat_int(1));
        p.add_constraint(rv(&[0, 1, 0, 1]), Relation::Eq, rat_int(1));
        for v in 0..4 {
            p.set_nonnegative(v);
        }
        let r = lp_solve(&p).unwrap();
        assert_eq!(*r.value().unwrap(), rat_int(2));
    }
}
