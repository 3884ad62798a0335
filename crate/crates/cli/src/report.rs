//! The registered claim suite: every headline constant the kernel can
//! reproduce, each with its comparison rule. Entries are computed
//! concurrently and assembled in registration order, so the report is
//! deterministic for a fixed seed and precision.

use anyhow::{anyhow, Result};
use serde::Serialize;

use normlab_core::free::certify::{
    exceptional_pair_certificate, separated_sandwich_check, witness_family,
};
use normlab_core::free::examples::{exlf_space, zero_one_space, ExampleGraph};
use normlab_core::free::{free_norm_primal, FreeVector};
use normlab_core::num::{pow10_neg, rat, rat_int, Rat, Value};
use normlab_core::quantities::{
    lower_l1_complex, lower_l1_real, staged_report, Generator, RealLowerEstimate, StagedTag,
};
use normlab_core::sums::{build_witness_x, build_witness_z_default, telescoping_identity};

use crate::format::ValueDto;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "within-tolerance")]
    WithinTolerance,
    #[serde(rename = "failed")]
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub claim: String,
    pub paper: String,
    pub computed: ValueDto,
    pub stage: u32,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub seed: u64,
    pub precision: u32,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub entries: Vec<ReportEntry>,
    pub metadata: Metadata,
}

impl ConstantsReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Failed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,paper,computed,stage,status\n");
        for e in &self.entries {
            let status = match e.status {
                Status::Exact => "exact",
                Status::WithinTolerance => "within-tolerance",
                Status::Failed => "failed",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                e.claim, e.paper, e.computed.decimal, e.stage, status
            ));
        }
        out
    }
}

pub struct Claim {
    pub id: &'static str,
    pub paper: &'static str,
    pub default_stage: u32,
    run: fn(u32, u32) -> (ValueDto, Status),
}

/// Registration order fixes the report order.
pub fn registry() -> Vec<Claim> {
    vec![
        Claim {
            id: "rudin.inv-pi",
            paper: "1/pi",
            default_stage: 64,
            run: run_roots_ratio,
        },
        Claim {
            id: "cantor.dcj",
            paper: "2/pi",
            default_stage: 16,
            run: run_cantor_dcj,
        },
        Claim {
            id: "remark3.real",
            paper: "1/sqrt(2)",
            default_stage: 2,
            run: run_remark3_real,
        },
        Claim {
            id: "remark3.complex-upper",
            paper: "0",
            default_stage: 2,
            run: run_remark3_complex,
        },
        Claim {
            id: "l1-basis.cjr",
            paper: "1",
            default_stage: 10,
            run: run_basis_cjr,
        },
        Claim {
            id: "complexified.equivalence",
            paper: "pi/2",
            default_stage: 8,
            run: run_complexified_equivalence,
        },
        Claim {
            id: "exlf.atom-norm",
            paper: "1",
            default_stage: 6,
            run: run_exlf_atom,
        },
        Claim {
            id: "exlf.pair-distance",
            paper: "2",
            default_stage: 6,
            run: run_exlf_pair,
        },
        Claim {
            id: "exlf3.member-norm",
            paper: "3",
            default_stage: 6,
            run: run_exlf3_member,
        },
        Claim {
            id: "exlf3.separation",
            paper: "4",
            default_stage: 6,
            run: run_exlf3_separation,
        },
        Claim {
            id: "exlf3.lp1",
            paper: "1",
            default_stage: 6,
            run: run_exlf3_lp1,
        },
        Claim {
            id: "exlf.lp2",
            paper: "3/4",
            default_stage: 5,
            run: run_exlf_lp2,
        },
        Claim {
            id: "sandwich.zero-one",
            paper: "1/2",
            default_stage: 3,
            run: run_sandwich_zero_one,
        },
        Claim {
            id: "chain.witness-x",
            paper: "n+1",
            default_stage: 4,
            run: run_chain_x,
        },
        Claim {
            id: "chain.witness-z",
            paper: "1",
            default_stage: 4,
            run: run_chain_z,
        },
        Claim {
            id: "chain.telescoping",
            paper: "1",
            default_stage: 8,
            run: run_telescoping,
        },
    ]
}

/// Runs the whole suite (or the selected ids) concurrently, assembling the
/// entries in registration order.
pub fn run_claims(
    ids: &[String],
    stage_override: Option<u32>,
    seed: u64,
    precision: u32,
) -> Result<ConstantsReport> {
    let registry = registry();
    let selected: Vec<&Claim> = if ids.is_empty() {
        registry.iter().collect()
    } else {
        let mut picked = Vec::new();
        for id in ids {
            let claim = registry
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| anyhow!("unknown claim id {id:?}"))?;
            picked.push(claim);
        }
        picked
    };
    let entries: Vec<ReportEntry> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|claim| {
                let stage = stage_override.unwrap_or(claim.default_stage);
                let run = claim.run;
                let id = claim.id;
                let paper = claim.paper;
                scope.spawn(move || {
                    let (computed, status) = run(stage, precision);
                    ReportEntry {
                        claim: id.to_string(),
                        paper: paper.to_string(),
                        computed,
                        stage,
                        status,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("claim worker"))
            .collect()
    });
    Ok(ConstantsReport {
        entries,
        metadata: Metadata {
            seed,
            precision,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

fn tol() -> Rat {
    pow10_neg(30)
}

fn exact_check(computed: Value, expected: &Value, digits: u32) -> (ValueDto, Status) {
    let status = match computed.cmp_certified(expected, &tol()) {
        Some(std::cmp::Ordering::Equal) => Status::Exact,
        _ => Status::Failed,
    };
    (ValueDto::from_value(&computed, digits), status)
}

fn run_roots_ratio(stage: u32, digits: u32) -> (ValueDto, Status) {
    let report = staged_report(StagedTag::RootsRatio, stage, &tol());
    let (_, last) = report.stages.last().expect("stage >= 1").clone();
    let ok = report.monotone_ok() && report.target_ok() == Some(true);
    (
        ValueDto::from_enclosure(&last, digits),
        if ok {
            Status::WithinTolerance
        } else {
            Status::Failed
        },
    )
}

fn run_cantor_dcj(stage: u32, digits: u32) -> (ValueDto, Status) {
    let report = staged_report(StagedTag::CantorDcjUpper, stage, &tol());
    let (_, last) = report.stages.last().expect("stage >= 1").clone();
    let ok = report.monotone_ok() && report.target_ok() == Some(true);
    (
        ValueDto::from_enclosure(&last, digits),
        if ok {
            Status::WithinTolerance
        } else {
            Status::Failed
        },
    )
}

fn run_remark3_real(_stage: u32, digits: u32) -> (ValueDto, Status) {
    let fam = Generator::E1IE1.family(2);
    let expected = Value::sqrt_rational(rat(1, 2));
    match lower_l1_real(&fam) {
        Ok(RealLowerEstimate::Bracket { lower, upper, .. }) => {
            if lower == expected && upper == expected {
                (ValueDto::from_value(&upper, digits), Status::Exact)
            } else {
                (ValueDto::from_value(&upper, digits), Status::Failed)
            }
        }
        _ => (ValueDto::from_value(&Value::zero(), digits), Status::Failed),
    }
}

fn run_remark3_complex(_stage: u32, digits: u32) -> (ValueDto, Status) {
    let fam = Generator::E1IE1.family(2);
    match lower_l1_complex(&fam, 8, &tol()) {
        Ok(bracket) => exact_check(bracket.upper, &Value::zero(), digits),
        Err(_) => (ValueDto::from_value(&Value::zero(), digits), Status::Failed),
    }
}

fn run_basis_cjr(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.clamp(1, 10);
    for n in 1..=stage {
        let fam = Generator::L1Basis.family(n);
        match lower_l1_real(&fam) {
            Ok(RealLowerEstimate::Exact(e)) if e.value == rat_int(1) => {}
            _ => return (ValueDto::from_rat(&rat_int(0), digits), Status::Failed),
        }
    }
    (ValueDto::from_rat(&rat_int(1), digits), Status::Exact)
}

fn run_complexified_equivalence(stage: u32, digits: u32) -> (ValueDto, Status) {
    let report = staged_report(StagedTag::ComplexifiedEquivalence, stage, &tol());
    let (_, last) = report.stages.last().expect("stage >= 1").clone();
    let ok = report.monotone_ok() && report.target_ok() == Some(true);
    (
        ValueDto::from_enclosure(&last, digits),
        if ok {
            Status::WithinTolerance
        } else {
            Status::Failed
        },
    )
}

fn run_exlf_atom(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(1);
    let space = exlf_space(stage);
    for k in 1..=stage as i64 {
        for v in [k, -k] {
            let atom = FreeVector::delta(&space, &format!("{v}")).expect("nonzero label");
            if free_norm_primal(&atom, &space).expect("fits") != rat_int(1) {
                return (ValueDto::from_rat(&rat_int(0), digits), Status::Failed);
            }
        }
    }
    (ValueDto::from_rat(&rat_int(1), digits), Status::Exact)
}

fn run_exlf_pair(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(1);
    let space = exlf_space(stage);
    for k in 1..=stage as i64 {
        let plus = FreeVector::delta(&space, &format!("{k}")).expect("label");
        let minus = FreeVector::delta(&space, &format!("{}", -k)).expect("label");
        let d = free_norm_primal(&plus.sub(&minus), &space).expect("fits");
        if d != rat_int(2) {
            return (ValueDto::from_rat(&d, digits), Status::Failed);
        }
    }
    (ValueDto::from_rat(&rat_int(2), digits), Status::Exact)
}

fn run_exlf3_member(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(3);
    let (space, members) = witness_family(ExampleGraph::Exlf3, stage);
    for m in &members {
        if free_norm_primal(m, &space).expect("fits") != rat_int(3) {
            return (ValueDto::from_rat(&rat_int(0), digits), Status::Failed);
        }
    }
    (ValueDto::from_rat(&rat_int(3), digits), Status::Exact)
}

fn run_exlf3_separation(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(3);
    let (space, members) = witness_family(ExampleGraph::Exlf3, stage);
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let d = free_norm_primal(&members[i].sub(&members[j]), &space).expect("fits");
            if d != rat_int(4) {
                return (ValueDto::from_rat(&d, digits), Status::Failed);
            }
        }
    }
    (ValueDto::from_rat(&rat_int(4), digits), Status::Exact)
}

fn run_exlf3_lp1(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(3);
    match exceptional_pair_certificate(ExampleGraph::Exlf3, stage, &rat(1, 4)) {
        Ok(cert) if cert.lp1_all_equal(&rat_int(1)) => {
            (ValueDto::from_rat(&rat_int(1), digits), Status::Exact)
        }
        _ => (ValueDto::from_rat(&rat_int(0), digits), Status::Failed),
    }
}

fn run_exlf_lp2(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(3);
    let eps = rat(1, 4);
    match exceptional_pair_certificate(ExampleGraph::Exlf, stage, &eps) {
        Ok(cert) => {
            let bound = rat_int(1) - &eps;
            let max = cert.lp2_max().cloned().unwrap_or_else(|| rat_int(0));
            if cert.lp2_all_at_most(&bound) {
                let status = if max == bound {
                    Status::Exact
                } else {
                    Status::WithinTolerance
                };
                (ValueDto::from_rat(&max, digits), status)
            } else {
                (ValueDto::from_rat(&max, digits), Status::Failed)
            }
        }
        Err(_) => (ValueDto::from_rat(&rat_int(0), digits), Status::Failed),
    }
}

fn run_sandwich_zero_one(stage: u32, digits: u32) -> (ValueDto, Status) {
    let stage = stage.max(1);
    let space = zero_one_space(stage);
    let one = rat_int(1);
    let samples: Vec<Vec<Rat>> = vec![
        (0..space.points())
            .map(|i| rat(i as i64 % 5 - 2, 2))
            .collect(),
        (0..space.points()).map(|_| rat_int(1)).collect(),
    ];
    match separated_sandwich_check(&space, &one, &one, &samples) {
        Ok(report) => {
            let tight = report
                .rows
                .iter()
                .all(|row| row.norm == row.lower && row.norm == row.upper);
            if report.all_hold() && tight {
                (ValueDto::from_rat(&rat(1, 2), digits), Status::Exact)
            } else {
                (ValueDto::from_rat(&rat(1, 2), digits), Status::Failed)
            }
        }
        Err(_) => (ValueDto::from_rat(&rat(1, 2), digits), Status::Failed),
    }
}

fn run_chain_x(stage: u32, digits: u32) -> (ValueDto, Status) {
    let n = stage.clamp(1, 6);
    let w = build_witness_x(n, 1);
    exact_check(
        Value::rational(w.norm),
        &Value::rational(rat_int(n as i64 + 1)),
        digits,
    )
}

fn run_chain_z(stage: u32, digits: u32) -> (ValueDto, Status) {
    let n = stage.clamp(1, 4);
    let mut ok = true;
    for m in [1u32, 2, 4, 8, 16, 32, 64] {
        ok &= build_witness_z_default(n, m).norm == rat_int(1);
    }
    (
        ValueDto::from_rat(&rat_int(1), digits),
        if ok { Status::Exact } else { Status::Failed },
    )
}

fn run_telescoping(stage: u32, digits: u32) -> (ValueDto, Status) {
    let n = stage.clamp(1, 8);
    let ok = (1..=128).all(|m| telescoping_identity(n, m));
    (
        ValueDto::from_rat(&rat_int(1), digits),
        if ok { Status::Exact } else { Status::Failed },
    )
}
