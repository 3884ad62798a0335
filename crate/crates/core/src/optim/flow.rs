//! Exact min-cost flow by successive shortest paths with node potentials.
//!
//! Costs, capacities and supplies are rationals. With nonnegative arc costs
//! the zero potential is valid initially and Dijkstra (dense O(V^2), exact
//! comparisons) stays correct throughout. Instances here are transportation
//! networks over finite metric spaces, at most a couple hundred nodes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::num::Rat;

/// Directed arc with rational cost; `capacity: None` means uncapacitated.
#[derive(Clone, Debug)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cost: Rat,
    pub capacity: Option<Rat>,
}

/// A flow network with node supplies summing to zero (positive = source).
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub supplies: Vec<Rat>,
    pub arcs: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowError {
    UnbalancedSupplies,
    NegativeCost { arc: usize },
    BadEndpoint { arc: usize },
    Infeasible,
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::UnbalancedSupplies => write!(f, "node supplies do not sum to zero"),
            FlowError::NegativeCost { arc } => write!(f, "arc {arc} has negative cost"),
            FlowError::BadEndpoint { arc } => write!(f, "arc {arc} references a missing node"),
            FlowError::Infeasible => write!(f, "no feasible flow routes all supplies"),
        }
    }
}

/// Exact minimum cost and an optimal per-arc flow assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: Rat,
    pub flows: Vec<Rat>,
}

struct Residual {
    // twin residual arcs 2k (forward) and 2k+1 (backward) for input arc k
    to: Vec<usize>,
    cost: Vec<Rat>,
    residual: Vec<Option<Rat>>, // None = infinite
    adj: Vec<Vec<usize>>,
}

pub fn min_cost_flow(network: &FlowNetwork) -> Result<FlowResult, FlowError> {
    let n = network.supplies.len();
    let total: Rat = network.supplies.iter().fold(Rat::zero(), |acc, s| acc + s);
    if !total.is_zero() {
        return Err(FlowError::UnbalancedSupplies);
    }
    for (k, arc) in network.arcs.iter().enumerate() {
        if arc.cost.is_negative() {
            return Err(FlowError::NegativeCost { arc: k });
        }
        if arc.from >= n || arc.to >= n {
            return Err(FlowError::BadEndpoint { arc: k });
        }
    }

    let mut res = Residual {
        to: Vec::with_capacity(network.arcs.len() * 2),
        cost: Vec::with_capacity(network.arcs.len() * 2),
        residual: Vec::with_capacity(network.arcs.len() * 2),
        adj: vec![Vec::new(); n],
    };
    for arc in &network.arcs {
        let fwd = res.to.len();
        res.to.push(arc.to);
        res.cost.push(arc.cost.clone());
        res.residual.push(arc.capacity.clone());
        res.adj[arc.from].push(fwd);
        let bwd = res.to.len();
        res.to.push(arc.from);
        res.cost.push(-arc.cost.clone());
        res.residual.push(Some(Rat::zero()));
        res.adj[arc.to].push(bwd);
    }

    let mut excess = network.supplies.clone();
    let mut potential = vec![Rat::zero(); n];
    let mut parent: Vec<Option<usize>> = vec![None; n];

    while let Some(source) = (0..n).find(|&v| excess[v].is_positive()) {
        // Dense Dijkstra over reduced costs from `source`.
        let mut dist: Vec<Option<Rat>> = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(Rat::zero());
        parent.iter_mut().for_each(|p| *p = None);
        let select = |dist: &[Option<Rat>], done: &[bool]| -> Option<usize> {
            let mut pick: Option<usize> = None;
            for v in 0..n {
                if done[v] || dist[v].is_none() {
                    continue;
                }
                match pick {
                    None => pick = Some(v),
                    Some(u) => {
                        if dist[v].as_ref().unwrap() < dist[u].as_ref().unwrap() {
                            pick = Some(v);
                        }
                    }
                }
            }
            pick
        };
        while let Some(u) = select(&dist, &done) {
            done[u] = true;
            let du = dist[u].clone().unwrap();
            for &e in &res.adj[u] {
                if let Some(r) = &res.residual[e] {
                    if !r.is_positive() {
                        continue;
                    }
                }
                let v = res.to[e];
                let reduced = &res.cost[e] + &potential[u] - &potential[v];
                debug_assert!(!reduced.is_negative());
                let cand = &du + &reduced;
                let better = match &dist[v] {
                    None => true,
                    Some(dv) => cand < *dv,
                };
                if better {
                    dist[v] = Some(cand);
                    parent[v] = Some(e);
                }
            }
        }
        // Nearest reachable node with a deficit (smallest index breaks ties).
        let mut sink: Option<usize> = None;
        for v in 0..n {
            if !excess[v].is_negative() || dist[v].is_none() {
                continue;
            }
            match sink {
                None => sink = Some(v),
                Some(t) => {
                    if dist[v].as_ref().unwrap() < dist[t].as_ref().unwrap() {
                        sink = Some(v);
                    }
                }
            }
        }
        let Some(sink) = sink else {
            return Err(FlowError::Infeasible);
        };

        // Bottleneck along the path.
        let mut amount = excess[source].clone().min(-excess[sink].clone());
        let mut v = sink;
        while v != source {
            let e = parent[v].expect("path edge");
            if let Some(r) = &res.residual[e] {
                if *r < amount {
                    amount = r.clone();
                }
            }
            v = res.to[e ^ 1];
        }
        debug_assert!(amount.is_positive());

        // Apply the augmentation.
        let mut v = sink;
        while v != source {
            let e = parent[v].expect("path edge");
            if let Some(r) = res.residual[e].as_mut() {
                *r -= &amount;
            }
            if let Some(r) = res.residual[e ^ 1].as_mut() {
                *r += &amount;
            } else {
                res.residual[e ^ 1] = Some(amount.clone());
            }
            v = res.to[e ^ 1];
        }
        excess[source] -= &amount;
        excess[sink] += &amount;

        // Potential update keeps reduced costs nonnegative; unreached nodes
        // move by the sink distance so cross arcs stay valid.
        let dt = dist[sink].clone().unwrap();
        for v in 0..n {
            let shift = match &dist[v] {
                Some(dv) => dv.clone().min(dt.clone()),
                None => dt.clone(),
            };
            potential[v] += shift;
        }
    }

    let mut flows = Vec::with_capacity(network.arcs.len());
    let mut value = Rat::zero();
    for (k, arc) in network.arcs.iter().enumerate() {
        // Flow on input arc k = residual of its backward twin.
        let f = res.residual[2 * k + 1].clone().unwrap_or_else(Rat::zero);
        value += &arc.cost * &f;
        flows.push(f);
    }
    Ok(FlowResult { value, flows })
}

/// Replays conservation of a flow assignment against the network, exactly.
pub fn conserves(network: &FlowNetwork, flows: &[Rat]) -> bool {
    if flows.len() != network.arcs.len() {
        return false;
    }
    let n = network.supplies.len();
    let mut net = vec![Rat::zero(); n];
    for (arc, f) in network.arcs.iter().zip(flows) {
        if f.is_negative() {
            return false;
        }
        if let Some(cap) = &arc.capacity {
            if f > cap {
                return false;
            }
        }
        net[arc.from] += f;
        net[arc.to] -= f;
    }
    net.iter().zip(&network.supplies).all(|(out, s)| out == s)
}
