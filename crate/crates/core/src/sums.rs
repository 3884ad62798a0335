//! Direct-sum constructions: the chain-norm witness families whose norms are
//! exactly `n+1` and exactly `1`, the telescoping identity behind the second
//! family, and a probe that assembles product families under a Phi-sum and
//! reports their composite constants.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::num::{pow_rat, rat, rat_int, Rat, Value};
use crate::quantities::VectorFamily;
use crate::spaces::{chain_norm, norm, value_min, NormModel, PhiSpec, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumsError {
    RepeatedIndices,
    EmptyFamily,
    LengthMismatch,
    Space(crate::spaces::SpaceError),
}

impl fmt::Display for SumsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumsError::RepeatedIndices => write!(f, "witness indices must be distinct"),
            SumsError::EmptyFamily => write!(f, "probe needs at least one component family"),
            SumsError::LengthMismatch => write!(f, "component families must have equal length"),
            SumsError::Space(e) => write!(f, "{e}"),
        }
    }
}

impl From<crate::spaces::SpaceError> for SumsError {
    fn from(e: crate::spaces::SpaceError) -> Self {
        SumsError::Space(e)
    }
}

/// The witness `(1, e_k, ..., e_k)` whose chain norm is exactly `n + 1`.
#[derive(Clone, Debug)]
pub struct ChainWitnessX {
    pub components: u32,
    pub basis_index: u32,
    pub t: Rat,
    pub xs: Vec<Vec<Rat>>,
    pub norm: Rat,
}

pub fn build_witness_x(n: u32, k: u32) -> ChainWitnessX {
    assert!(n >= 1);
    let dim = (k + 1) as usize;
    let mut e_k = vec![Rat::zero(); dim];
    e_k[k as usize] = Rat::one();
    let xs = vec![e_k; n as usize];
    let t = Rat::one();
    let value = chain_norm(&t, &xs);
    assert_eq!(
        value,
        rat_int(n as i64 + 1),
        "chain witness norm must be n + 1"
    );
    ChainWitnessX {
        components: n,
        basis_index: k,
        t,
        xs,
        norm: value,
    }
}

/// The witness `((1-1/m)^n, (1-1/m)^{n-1} u, ..., u)` with
/// `u = (1/m) sum_l e_{k_l}` over `m` distinct indices; its chain norm is
/// exactly 1.
#[derive(Clone, Debug)]
pub struct ChainWitnessZ {
    pub components: u32,
    pub spread: u32,
    pub indices: Vec<u32>,
    pub t: Rat,
    pub xs: Vec<Vec<Rat>>,
    pub norm: Rat,
}

pub fn build_witness_z(n: u32, m: u32, indices: &[u32]) -> Result<ChainWitnessZ, SumsError> {
    assert!(n >= 1 && m >= 1);
    assert_eq!(indices.len(), m as usize);
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(SumsError::RepeatedIndices);
    }
    let dim = (*sorted.last().unwrap() + 1) as usize;
    let mut u = vec![Rat::zero(); dim];
    let weight = rat(1, m as i64);
    for &i in indices {
        u[i as usize] = weight.clone();
    }
    let p = Rat::one() - &weight; // 1 - 1/m
    let t = pow_rat(&p, n);
    let xs: Vec<Vec<Rat>> = (1..=n)
        .map(|j| {
            let scale = pow_rat(&p, n - j);
            u.iter().map(|c| c * &scale).collect()
        })
        .collect();
    let value = chain_norm(&t, &xs);
    assert_eq!(value, Rat::one(), "scaled-average witness norm must be 1");
    Ok(ChainWitnessZ {
        components: n,
        spread: m,
        indices: indices.to_vec(),
        t,
        xs,
        norm: value,
    })
}

/// Convenience: the default index choice `0..m`.
pub fn build_witness_z_default(n: u32, m: u32) -> ChainWitnessZ {
    let indices: Vec<u32> = (0..m).collect();
    build_witness_z(n, m, &indices).expect("default indices are distinct")
}

/// Exact verification of `(1-1/m)^k + (1/m) sum_{j<k} (1-1/m)^j = 1` for
/// every `k` in `1..=n`.
pub fn telescoping_identity(n: u32, m: u32) -> bool {
    assert!(m >= 1);
    let p = Rat::one() - rat(1, m as i64);
    let inv_m = rat(1, m as i64);
    let mut geometric = Rat::zero(); // sum_{j<k} p^j
    let mut power = Rat::one(); // p^k running value
    for _ in 1..=n {
        geometric += &power;
        power *= &p;
        if &power + &inv_m * &geometric != Rat::one() {
            return false;
        }
    }
    true
}

/// Composite constants of a product family under a Phi aggregation.
#[derive(Clone, Debug)]
pub struct PhiProbeReport {
    pub member_norms: Vec<Value>,
    pub min_separation: Value,
    pub component_separations: Vec<Value>,
}

/// Zips equally long component families into one family over the Phi-sum
/// model and reports composite member norms, the composite separation, and
/// the per-component separations.
pub fn phi_sum_separation_probe(
    phi: PhiSpec,
    components: &[VectorFamily],
    tolerance: &Rat,
) -> Result<PhiProbeReport, SumsError> {
    if components.is_empty() {
        return Err(SumsError::EmptyFamily);
    }
    let count = components[0].len();
    if count == 0 || components.iter().any(|f| f.len() != count) {
        return Err(SumsError::LengthMismatch);
    }
    let models: Vec<NormModel> = components.iter().map(|f| f.model.clone()).collect();
    let model = NormModel::phi_sum(models, phi)?;
    let members: Vec<Vector> = (0..count)
        .map(|i| {
            let mut coords = Vec::new();
            for f in components {
                coords.extend(f.members[i].coords.iter().cloned());
            }
            Vector { coords }
        })
        .collect();

    let member_norms: Vec<Value> = members
        .iter()
        .map(|m| norm(&model, m, tolerance))
        .collect::<Result<_, _>>()?;

    let mut pairwise = Vec::new();
    for i in 0..count {
        for j in (i + 1)..count {
            pairwise.push(norm(&model, &members[i].sub(&members[j]), tolerance)?);
        }
    }
    let min_separation = if pairwise.is_empty() {
        Value::zero()
    } else {
        value_min(&pairwise, tolerance)
    };

    let mut component_separations = Vec::new();
    for f in components {
        let mut dists = Vec::new();
        for i in 0..count {
            for j in (i + 1)..count {
                dists.push(norm(&f.model, &f.members[i].sub(&f.members[j]), tolerance)?);
            }
        }
        component_separations.push(if dists.is_empty() {
            Value::zero()
        } else {
            value_min(&dists, tolerance)
        });
    }

    Ok(PhiProbeReport {
        member_norms,
        min_separation,
        component_separations,
    })
}
