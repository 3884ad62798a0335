//! Exact optimization kernel: rational simplex and min-cost flow.
//!
//! Both solvers are pure functions of their inputs and serve as mutual
//! oracles for the norm computations elsewhere in the crate.

pub mod flow;
pub mod lp;

pub use flow::{conserves, min_cost_flow, Arc, FlowError, FlowNetwork, FlowResult};
pub use lp::{
    lp_solve, Constraint, LinExpr, LinearProgram, LpBuilder, LpError, LpResult, Relation, Sense,
    VarBound,
};
