//! Command-line harness: reproduces the registered constants as a
//! machine-readable report and runs the selection, quantity, free-norm,
//! certificate and direct-sum computations on demand.

mod format;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use normlab_core::free::certify::exceptional_pair_certificate;
use normlab_core::free::examples::{
    exlf3_space, exlf_norm_formula, exlf_space, mprime_norm_formula, zero_one_space, ExampleGraph,
};
use normlab_core::free::{free_norm_dual, free_norm_primal, FiniteMetricSpace, FreeVector};
use normlab_core::num::{decimal_string, pow10_neg, rat_int, ComplexRat, Rat};
use normlab_core::quantities::{
    diam_and_separation, l1_equivalence_constant, lower_l1_complex, lower_l1_real,
    rosenthal_stage_check, staged_report, Direction, EquivalenceConstant, Generator,
    RealLowerEstimate, StagedTag,
};
use normlab_core::subset::{best_subset_bruteforce, halfplane_select};
use normlab_core::sums::{build_witness_x, build_witness_z_default, telescoping_identity};

use format::{
    complex_list, vector_from_file, ComplexDto, ExactOutput, SpaceFile, ValueDto, VectorFile,
};
use report::run_claims;

#[derive(Parser)]
#[command(
    name = "normlab",
    version,
    about = "Exact norm computations over sequence spaces and free spaces"
)]
struct Cli {
    /// Decimal digits when rendering values (flags > config > NORMLAB_PRECISION > 12).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Seed recorded in reports and used by randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Flat key=value config file (keys: precision, seed, phase-grid).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subset selection for complex sums: best half-plane vs brute force.
    Rudin(RudinArgs),
    /// Run the registered constants suite (JSON report to stdout).
    Constants(ConstantsArgs),
    /// Finite-stage quantities of a named family.
    Quantities(QuantitiesArgs),
    /// Staged convergence report for a registered tag.
    Staged(StagedArgs),
    /// Free-space norm of a vector over a metric space.
    FreeNorm(FreeNormArgs),
    /// LP certificates for the example graphs.
    Certify(CertifyArgs),
    /// Chain-norm witnesses and the telescoping identity.
    Sums(SumsArgs),
}

#[derive(Args)]
struct RudinArgs {
    /// JSON file with a list of complex rationals.
    #[arg(long, conflicts_with_all = ["witness", "random"])]
    input: Option<PathBuf>,
    /// Staged convergence of the roots-family ratio up to this stage.
    #[arg(long, conflicts_with = "random")]
    witness: Option<u32>,
    /// Random instance with this many entries, checked against brute force.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Claim ids to run (all when empty or with --all).
    ids: Vec<String>,
    #[arg(long)]
    all: bool,
    /// Override the stage of the selected claims.
    #[arg(long)]
    stage: Option<u32>,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct QuantitiesArgs {
    /// Family generator tag (l1-basis, l1-basis-complex, complexified-basis,
    /// cantor-projections, exlf-alternating, exlf3-differences, e1-ie1).
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 4)]
    stage: u32,
    /// Phase grid size for the complex witness search.
    #[arg(long, default_value_t = 8)]
    phase_grid: u32,
}

#[derive(Args)]
struct StagedArgs {
    /// Registered tag (roots-ratio, cantor-dcj-upper, l1-basis-cjr,
    /// complexified-equivalence).
    #[arg(long)]
    tag: String,
    #[arg(long, default_value_t = 16)]
    max: u32,
}

#[derive(Args)]
struct FreeNormArgs {
    /// Metric space JSON file (labels, matrix, base).
    #[arg(long, conflicts_with = "example")]
    space: Option<PathBuf>,
    /// Built-in example space.
    #[arg(long, value_enum)]
    example: Option<ExampleSpace>,
    /// Truncation stage for built-in examples.
    #[arg(long, default_value_t = 5)]
    n: u32,
    /// Vector JSON file (label -> {num, den}).
    #[arg(long)]
    vector: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleSpace {
    Exlf,
    Exlf3,
    ZeroOne,
    /// The 0-1 space extended by a slack point at distance 1/2 (which
    /// becomes the base); every norm is exactly half the l1 mass.
    ZeroOneStar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Primal,
    Dual,
    Formula,
    All,
}

#[derive(Args)]
struct CertifyArgs {
    /// Example graph to certify.
    #[arg(value_enum)]
    example: CertifyExample,
    #[arg(long, default_value_t = 5)]
    n: u32,
    /// Exceptional-pair margin (rational, e.g. 1/4 or 0.25).
    #[arg(long, default_value = "1/4")]
    eps: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyExample {
    Exlf,
    Exlf3,
}

#[derive(Args)]
struct SumsArgs {
    #[arg(long, default_value_t = 4)]
    max_n: u32,
    #[arg(long, default_value_t = 64)]
    max_m: u32,
}

struct Settings {
    precision: u32,
    seed: u64,
    phase_grid: u32,
}

fn load_settings(cli: &Cli) -> Result<Settings> {
    let mut precision: Option<u32> = None;
    let mut seed: Option<u64> = None;
    let mut phase_grid: Option<u32> = None;
    if let Ok(env) = std::env::var("NORMLAB_PRECISION") {
        precision = Some(
            env.parse()
                .context("NORMLAB_PRECISION must be an integer")?,
        );
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {} is not key = value", lineno + 1))?;
            let value = value.trim();
            match key.trim() {
                "precision" => precision = Some(value.parse()?),
                "seed" => seed = Some(value.parse()?),
                "phase-grid" => phase_grid = Some(value.parse()?),
                other => bail!("unknown config key {other:?}"),
            }
        }
    }
    // Flags win over config, config over environment, environment over defaults.
    Ok(Settings {
        precision: cli.precision.or(precision).unwrap_or(12),
        seed: cli.seed.or(seed).unwrap_or(0),
        phase_grid: phase_grid.unwrap_or(8),
    })
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| anyhow!("bad integer {s:?}: {e}"))
}

fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_bigint(num)?;
        let d = parse_bigint(den)?;
        if d == BigInt::from(0) {
            bail!("zero denominator in {s:?}");
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" {
            BigInt::from(0)
        } else {
            parse_bigint(int)?
        };
        let frac_part = parse_bigint(frac)?;
        let combined = int_part * &scale + if negative { -frac_part } else { frac_part };
        return Ok(Rat::new(combined, scale));
    }
    Ok(Rat::from_integer(parse_bigint(s)?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli);
    match result {
        Ok(pass) => {
            // Wall time goes to stderr so report bytes stay reproducible.
            eprintln!("completed in {:.3}s", started.elapsed().as_secs_f64());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let settings = load_settings(cli)?;
    match &cli.command {
        Command::Rudin(args) => cmd_rudin(args, &settings),
        Command::Constants(args) => cmd_constants(args, &settings),
        Command::Quantities(args) => cmd_quantities(args, &settings),
        Command::Staged(args) => cmd_staged(args, &settings),
        Command::FreeNorm(args) => cmd_free_norm(args, &settings),
        Command::Certify(args) => cmd_certify(args, &settings),
        Command::Sums(args) => cmd_sums(args, &settings),
    }
}

// --- rudin -------------------------------------------------------------

#[derive(Serialize)]
struct SelectionOutput {
    subset: Vec<usize>,
    subset_sum: ComplexDto,
    total: ValueDto,
    ratio: ValueDto,
    matches_bruteforce: Option<bool>,
}

#[derive(Serialize)]
struct StageRow {
    stage: u32,
    value: ValueDto,
}

#[derive(Serialize)]
struct WitnessOutput {
    rows: Vec<StageRow>,
    target: ValueDto,
    strictly_decreasing: bool,
    within_tolerance: bool,
}

fn cmd_rudin(args: &RudinArgs, settings: &Settings) -> Result<bool> {
    let tol = pow10_neg(30);
    if let Some(stage) = args.witness {
        let report = staged_report(StagedTag::RootsRatio, stage.max(1), &tol);
        let rows = report
            .stages
            .iter()
            .map(|(n, e)| StageRow {
                stage: *n,
                value: ValueDto::from_enclosure(e, settings.precision),
            })
            .collect();
        let out = WitnessOutput {
            rows,
            target: ValueDto::from_enclosure(
                report.target.as_ref().expect("roots tag has a target"),
                settings.precision,
            ),
            strictly_decreasing: report.monotone_ok(),
            within_tolerance: report.target_verdict() == Some(true),
        };
        emit(&out)?;
        return Ok(out.strictly_decreasing && out.within_tolerance);
    }

    let lambda: Vec<ComplexRat> = if let Some(path) = &args.input {
        let file: format::ComplexListFile = read_json(path)?;
        complex_list(&file)?
    } else if let Some(m) = args.random {
        if m == 0 || m > 20 {
            bail!("--random takes a size between 1 and 20");
        }
        random_complex_list(m, settings.seed)
    } else {
        bail!("one of --input, --witness, --random is required");
    };
    let selection = halfplane_select(&lambda, &tol).map_err(|e| anyhow!("{e}"))?;
    let matches = if lambda.len() <= 20 {
        let (_, brute_sum) = best_subset_bruteforce(&lambda).map_err(|e| anyhow!("{e}"))?;
        Some(brute_sum.modulus_sq() == selection.subset_sum.modulus_sq())
    } else {
        None
    };
    let out = SelectionOutput {
        subset: selection.subset.clone(),
        subset_sum: ComplexDto::from_complex(&selection.subset_sum),
        total: ValueDto::from_value(&selection.total, settings.precision),
        ratio: ValueDto::from_value(&selection.ratio, settings.precision),
        matches_bruteforce: matches,
    };
    emit(&out)?;
    Ok(matches.unwrap_or(true))
}

/// Deterministic pseudo-random complex rationals from a split-mix walk.
fn random_complex_list(m: usize, seed: u64) -> Vec<ComplexRat> {
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    (0..m)
        .map(|_| {
            let raw = next();
            let re = ((raw & 0xF) as i64) - 8;
            let im = (((raw >> 8) & 0xF) as i64) - 8;
            let den = (((raw >> 16) & 0x3) as i64) + 1;
            ComplexRat::new(
                Rat::new(BigInt::from(re), BigInt::from(den)),
                Rat::new(BigInt::from(im), BigInt::from(den)),
            )
        })
        .collect()
}

// --- constants -------------------------------------------------------------

fn cmd_constants(args: &ConstantsArgs, settings: &Settings) -> Result<bool> {
    let ids = if args.all {
        Vec::new()
    } else {
        args.ids.clone()
    };
    let report = run_claims(&ids, args.stage, settings.seed, settings.precision)?;
    if args.csv {
        print!("{}", report.to_csv());
    } else {
        emit(&report)?;
    }
    Ok(report.all_pass())
}

// --- quantities -------------------------------------------------------------

#[derive(Serialize)]
struct QuantitiesOutput {
    family: String,
    stage: u32,
    members: usize,
    diameter: ValueDto,
    separation: ValueDto,
    real_lower: Option<ValueDto>,
    real_upper: Option<ValueDto>,
    complex_lower: Option<ValueDto>,
    complex_upper: Option<ValueDto>,
    equivalence: Option<String>,
    stage_inequality_holds: Option<bool>,
}

fn cmd_quantities(args: &QuantitiesArgs, settings: &Settings) -> Result<bool> {
    let generator = Generator::from_tag(&args.family)
        .ok_or_else(|| anyhow!("unknown family tag {:?}", args.family))?;
    let family = generator.family(args.stage);
    let tol = pow10_neg(30);
    let (diameter, separation) = diam_and_separation(&family, &tol).map_err(|e| anyhow!("{e}"))?;
    let digits = settings.precision;

    let mut real_lower = None;
    let mut real_upper = None;
    let mut stage_inequality = None;
    match lower_l1_real(&family) {
        Ok(RealLowerEstimate::Exact(e)) => {
            real_lower = Some(ValueDto::from_rat(&e.value, digits));
            real_upper = real_lower.clone();
            if let Ok(check) = rosenthal_stage_check(&family, &tol) {
                stage_inequality = Some(check.holds);
            }
        }
        Ok(RealLowerEstimate::Bracket { lower, upper, .. }) => {
            real_lower = Some(ValueDto::from_value(&lower, digits));
            real_upper = Some(ValueDto::from_value(&upper, digits));
        }
        Err(_) => {}
    }

    let mut complex_lower = None;
    let mut complex_upper = None;
    if let Ok(bracket) = lower_l1_complex(&family, settings.phase_grid, &tol) {
        complex_lower = Some(ValueDto::from_value(&bracket.lower, digits));
        complex_upper = Some(ValueDto::from_value(&bracket.upper, digits));
    }

    let equivalence = match l1_equivalence_constant(&family, settings.phase_grid, &tol) {
        Ok(EquivalenceConstant::Exact(c)) => Some(decimal_string(&c, digits)),
        Ok(EquivalenceConstant::Bracket { lo, hi }) => {
            let lo = ValueDto::from_value(&lo, digits).decimal;
            let hi = hi
                .map(|h| ValueDto::from_value(&h, digits).decimal)
                .unwrap_or_else(|| String::from("inf"));
            Some(format!("[{lo}, {hi}]"))
        }
        Ok(EquivalenceConstant::Infinite) => Some(String::from("inf")),
        Err(_) => None,
    };

    let out = QuantitiesOutput {
        family: args.family.clone(),
        stage: args.stage,
        members: family.len(),
        diameter: ValueDto::from_value(&diameter, digits),
        separation: ValueDto::from_value(&separation, digits),
        real_lower,
        real_upper,
        complex_lower,
        complex_upper,
        equivalence,
        stage_inequality_holds: stage_inequality,
    };
    emit(&out)?;
    Ok(out.stage_inequality_holds.unwrap_or(true))
}

// --- staged -------------------------------------------------------------

#[derive(Serialize)]
struct StagedOutput {
    tag: String,
    direction: String,
    rows: Vec<StageRow>,
    target: Option<ValueDto>,
    monotone_ok: bool,
    target_ok: Option<bool>,
}

fn cmd_staged(args: &StagedArgs, settings: &Settings) -> Result<bool> {
    let tag = StagedTag::from_tag(&args.tag)
        .ok_or_else(|| anyhow!("unknown staged tag {:?}", args.tag))?;
    let report = staged_report(tag, args.max.max(1), &pow10_neg(30));
    let out = StagedOutput {
        tag: args.tag.clone(),
        direction: match report.direction {
            Direction::Decreasing => "decreasing".into(),
            Direction::Increasing => "increasing".into(),
            Direction::None => "none".into(),
        },
        rows: report
            .stages
            .iter()
            .map(|(n, e)| StageRow {
                stage: *n,
                value: ValueDto::from_enclosure(e, settings.precision),
            })
            .collect(),
        target: report
            .target
            .as_ref()
            .map(|t| ValueDto::from_enclosure(t, settings.precision)),
        monotone_ok: report.monotone_ok(),
        target_ok: report.target_verdict(),
    };
    emit(&out)?;
    Ok(out.monotone_ok && out.target_ok.unwrap_or(true))
}

// --- free-norm -------------------------------------------------------------

#[derive(Serialize)]
struct FreeNormOutput {
    space: String,
    points: usize,
    methods: Vec<MethodValue>,
    agree: bool,
}

#[derive(Serialize)]
struct MethodValue {
    method: String,
    value: ExactOutput,
}

type Formula = fn(&FreeVector, u32) -> Rat;

fn cmd_free_norm(args: &FreeNormArgs, settings: &Settings) -> Result<bool> {
    let (space, space_name, formula): (FiniteMetricSpace, String, Option<Formula>) =
        if let Some(path) = &args.space {
            let file: SpaceFile = read_json(path)?;
            (file.to_space()?, path.display().to_string(), None)
        } else {
            match args.example {
                Some(ExampleSpace::Exlf) => (
                    exlf_space(args.n),
                    format!("exlf(n={})", args.n),
                    Some(exlf_norm_formula as Formula),
                ),
                Some(ExampleSpace::Exlf3) => (
                    exlf3_space(args.n.max(2)),
                    format!("exlf3(n={})", args.n),
                    None,
                ),
                Some(ExampleSpace::ZeroOne) => (
                    zero_one_space(args.n),
                    format!("zero-one(n={})", args.n),
                    Some(wrap_mprime as Formula),
                ),
                Some(ExampleSpace::ZeroOneStar) => (
                    zero_one_space(args.n)
                        .star_extension(&parse_rational("1/2").expect("constant"))
                        .expect("star extension of a metric space"),
                    format!("zero-one-star(n={})", args.n),
                    Some(wrap_half_l1 as Formula),
                ),
                None => bail!("either --space or --example is required"),
            }
        };
    let vector_file: VectorFile = read_json(&args.vector)?;
    let mu = vector_from_file(&vector_file, &space)?;

    let mut exact: Vec<Rat> = Vec::new();
    let mut methods = Vec::new();
    let want = |m: Method| args.method == Method::All || args.method == m;
    if want(Method::Primal) {
        let v = free_norm_primal(&mu, &space).map_err(|e| anyhow!("{e}"))?;
        methods.push(MethodValue {
            method: "primal".into(),
            value: ExactOutput::new(&v, settings.precision),
        });
        exact.push(v);
    }
    if want(Method::Dual) {
        let v = free_norm_dual(&mu, &space).map_err(|e| anyhow!("{e}"))?;
        methods.push(MethodValue {
            method: "dual".into(),
            value: ExactOutput::new(&v, settings.precision),
        });
        exact.push(v);
    }
    if want(Method::Formula) {
        match formula {
            Some(f) => {
                let v = f(&mu, args.n);
                methods.push(MethodValue {
                    method: "formula".into(),
                    value: ExactOutput::new(&v, settings.precision),
                });
                exact.push(v);
            }
            None if args.method == Method::Formula => {
                bail!("no closed-form formula is registered for this space")
            }
            None => {}
        }
    }
    if methods.is_empty() {
        bail!("no method selected");
    }
    let agree = exact.iter().all(|v| *v == exact[0]);
    let out = FreeNormOutput {
        space: space_name,
        points: space.points(),
        methods,
        agree,
    };
    emit(&out)?;
    Ok(out.agree)
}

fn wrap_mprime(mu: &FreeVector, _n: u32) -> Rat {
    mprime_norm_formula(mu)
}

fn wrap_half_l1(mu: &FreeVector, _n: u32) -> Rat {
    mu.l1_norm() / rat_int(2)
}

// --- certify -------------------------------------------------------------

#[derive(Serialize)]
struct CertifyOutput {
    example: String,
    stage: u32,
    eps: String,
    lp1_single: Vec<PairValue>,
    lp1: Vec<PairPairValue>,
    lp2: Vec<Lp2Value>,
    lp1_max: Option<ExactOutput>,
    lp2_max: Option<ExactOutput>,
    ok: bool,
}

#[derive(Serialize)]
struct PairValue {
    n: u32,
    optimum: ExactOutput,
}

#[derive(Serialize)]
struct PairPairValue {
    n: u32,
    m: u32,
    optimum: ExactOutput,
}

#[derive(Serialize)]
struct Lp2Value {
    n: u32,
    optimum: Option<ExactOutput>,
    witness: Option<(String, String)>,
}

fn cmd_certify(args: &CertifyArgs, settings: &Settings) -> Result<bool> {
    let eps = parse_rational(&args.eps)?;
    let example = match args.example {
        CertifyExample::Exlf => ExampleGraph::Exlf,
        CertifyExample::Exlf3 => ExampleGraph::Exlf3,
    };
    let stage = args.n.max(3);
    let cert = exceptional_pair_certificate(example, stage, &eps).map_err(|e| anyhow!("{e}"))?;
    let digits = settings.precision;
    let one = rat_int(1);
    let lp2_bound = &one - &eps;
    let ok = cert.lp1.iter().all(|e| e.optimum <= one) && cert.lp2_all_at_most(&lp2_bound);
    let out = CertifyOutput {
        example: example.name().to_string(),
        stage,
        eps: args.eps.clone(),
        lp1_single: cert
            .lp1_single
            .iter()
            .map(|(n, v)| PairValue {
                n: *n,
                optimum: ExactOutput::new(v, digits),
            })
            .collect(),
        lp1: cert
            .lp1
            .iter()
            .map(|e| PairPairValue {
                n: e.n,
                m: e.m,
                optimum: ExactOutput::new(&e.optimum, digits),
            })
            .collect(),
        lp2: cert
            .lp2
            .iter()
            .map(|e| Lp2Value {
                n: e.n,
                optimum: e.optimum.as_ref().map(|v| ExactOutput::new(v, digits)),
                witness: e.witness.clone(),
            })
            .collect(),
        lp1_max: cert.lp1_max().map(|v| ExactOutput::new(v, digits)),
        lp2_max: cert.lp2_max().map(|v| ExactOutput::new(v, digits)),
        ok,
    };
    emit(&out)?;
    Ok(ok)
}

// --- sums -------------------------------------------------------------

#[derive(Serialize)]
struct SumsOutput {
    witness_x: Vec<SumsRow>,
    witness_z: Vec<SumsRow>,
    telescoping_ok: bool,
}

#[derive(Serialize)]
struct SumsRow {
    n: u32,
    m: Option<u32>,
    norm: ExactOutput,
    expected: ExactOutput,
}

fn cmd_sums(args: &SumsArgs, settings: &Settings) -> Result<bool> {
    let digits = settings.precision;
    let max_n = args.max_n.clamp(1, 6);
    let max_m = args.max_m.clamp(1, 128);
    let mut witness_x = Vec::new();
    for n in 1..=max_n {
        let w = build_witness_x(n, 1);
        witness_x.push(SumsRow {
            n,
            m: None,
            norm: ExactOutput::new(&w.norm, digits),
            expected: ExactOutput::new(&rat_int(n as i64 + 1), digits),
        });
    }
    let mut witness_z = Vec::new();
    for n in 1..=max_n.min(4) {
        for m in [1, 2, 4, 8, 16, 32, 64, 128] {
            if m > max_m {
                break;
            }
            let z = build_witness_z_default(n, m);
            witness_z.push(SumsRow {
                n,
                m: Some(m),
                norm: ExactOutput::new(&z.norm, digits),
                expected: ExactOutput::new(&rat_int(1), digits),
            });
        }
    }
    let telescoping_ok = (1..=8u32).all(|n| (1..=max_m).all(|m| telescoping_identity(n, m)));
    let out = SumsOutput {
        witness_x,
        witness_z,
        telescoping_ok,
    };
    emit(&out)?;
    Ok(out.telescoping_ok)
}
