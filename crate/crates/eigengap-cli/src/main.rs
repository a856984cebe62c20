//! `eigengap`: explicit Laplace spectra of model domains and manifolds,
//! universal eigenvalue inequalities, and consecutive-gap conjecture
//! sweeps, with exact integer-label arithmetic wherever the spectrum is
//! explicit.
//!
//! Exit codes: `0` when every asserted check passes, `1` when a proved
//! bound fails its assertion, `2` on usage or parse errors, `3` on numeric
//! failure.  Diagnostics go to standard error, data to standard output or
//! the `--output` file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use eigengap::conjecture::{
    cuboid_conjecture_check, gap_conjecture_check, ppw_gap_form_check, triangle_conjecture_check,
    CoeffMode, ConjectureId, ConjectureVerdict, GridRange, ScanFamily,
};
use eigengap::generate::spectrum;
use eigengap::ineq::{check_range, gap_bound_table, InequalityId};
use eigengap::spectrum::{DomainSpec, Problem, Spectrum};
use eigengap::{Error, Result};
use eigengap_cli::domain::parse_domain;
use eigengap_cli::output::{self, Format};
use eigengap_cli::suite;

#[derive(Parser)]
#[command(
    name = "eigengap",
    version,
    about = "Explicit Laplace spectra and universal eigenvalue-gap checks"
)]
struct Cli {
    /// JSON run configuration supplying defaults for omitted flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the certified initial segment of a model spectrum.
    Spectrum(SpectrumArgs),
    /// Evaluate one inequality at every index up to the budget.
    Check(CheckArgs),
    /// Tabulate the actual consecutive gap against every applicable bound.
    Bounds(BoundsArgs),
    /// Verify an exact label-gap proposition.
    VerifyProp(VerifyPropArgs),
    /// Sweep one gap conjecture and report the verdict without asserting it.
    Conjecture(ConjectureArgs),
    /// Scan a family of domains, recording margins and any violations.
    Scan(ScanArgs),
    /// Run the verification suite and write its manifest.
    Report(ReportArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Check(_) => "check",
            Command::Bounds(_) => "bounds",
            Command::VerifyProp(_) => "verify-prop",
            Command::Conjecture(_) => "conjecture",
            Command::Scan(_) => "scan",
            Command::Report(_) => "report",
        }
    }
}

/// Arithmetic preference for checks on a generated spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Precision {
    /// Decide by exact integer-label arithmetic whenever the spectrum
    /// carries labels and the comparison is unit-free.
    ExactPreferred,
    /// Drop labels so every decision uses floating point.
    Float,
}

#[derive(Args)]
struct IoArgs {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write data to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Domain string such as `box:1,1`, `ball:n=3,R=1`, or `cpn:n=2`.
    #[arg(long)]
    domain: Option<String>,
    /// Number of certified eigenvalues to emit, counted with multiplicity.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    precision: Option<Precision>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Inequality identifier, e.g. `yang1`, `czy-gap`, `cpn-universal`.
    #[arg(long)]
    inequality: String,
    #[arg(long)]
    domain: Option<String>,
    /// Highest index to check.
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum)]
    precision: Option<Precision>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum)]
    precision: Option<Precision>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PropId {
    Prop1,
    Prop2,
}

#[derive(Args)]
struct VerifyPropArgs {
    /// Which proposition to verify.
    #[arg(long, value_enum)]
    id: PropId,
    /// Cube dimension for `prop1` (2 or 3).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConjToken {
    #[value(name = "ConZ1_S1")]
    ConZ1S1,
    #[value(name = "ConZ1prime_S2")]
    ConZ1PrimeS2,
    #[value(name = "ConZ1_cuboid")]
    ConZ1Cuboid,
    #[value(name = "ConZ5_triangle")]
    ConZ5Triangle,
    #[value(name = "PpwGapForm")]
    PpwGapForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoeffToken {
    S1,
    S2,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Conjecture identifier.
    #[arg(long, value_enum)]
    id: ConjToken,
    /// Shape coefficient; implied by the identifier and checked for
    /// consistency when given.
    #[arg(long, value_enum)]
    coeff: Option<CoeffToken>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum)]
    precision: Option<Precision>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyToken {
    Rectangles,
    Boxes,
    TrianglePair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanConjToken {
    #[value(name = "ConZ1_S1")]
    ConZ1S1,
    #[value(name = "ConZ1prime_S2")]
    ConZ1PrimeS2,
    #[value(name = "ConZ1_cuboid")]
    ConZ1Cuboid,
}

#[derive(Args)]
struct ScanArgs {
    /// Family to sweep.
    #[arg(long, value_enum)]
    family: FamilyToken,
    /// Aspect grid `start:end:step` for the rectangle and box families.
    #[arg(long)]
    range: Option<String>,
    /// Conjecture evaluated across the family.
    #[arg(long, value_enum, default_value = "ConZ1prime_S2")]
    conjecture: ScanConjToken,
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteToken {
    Paper,
}

#[derive(Args)]
struct ReportArgs {
    /// Which suite to run.
    #[arg(long, value_enum)]
    suite: SuiteToken,
    /// Perturb one check's asserted constant (`c1` through `c8`) so a
    /// correct build fails it; exercises the exit-code contract.
    #[arg(long, value_name = "CHECK")]
    mutate: Option<String>,
    #[command(flatten)]
    io: IoArgs,
}

/// Optional run configuration; explicit flags win over config values.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: Option<String>,
    domain: Option<String>,
    kmax: Option<usize>,
    format: Option<Format>,
    output: Option<PathBuf>,
    precision: Option<Precision>,
}

fn load_config(path: Option<&Path>, command: &str) -> Result<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read config {}: {e}", path.display())))?;
    let cfg: RunConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Parameter(format!("malformed config {}: {e}", path.display())))?;
    if let Some(expected) = &cfg.command {
        if expected != command {
            return Err(Error::Parameter(format!(
                "config names command `{expected}`, invoked `{command}`"
            )));
        }
    }
    Ok(cfg)
}

fn resolve_domain(arg: Option<&str>, cfg: &RunConfig) -> Result<DomainSpec> {
    let s = arg
        .or(cfg.domain.as_deref())
        .ok_or_else(|| Error::Parameter("missing --domain".into()))?;
    parse_domain(s)
}

fn resolve_kmax(arg: Option<usize>, cfg: &RunConfig, problem: Problem) -> Result<usize> {
    let kmax = arg.or(cfg.kmax).unwrap_or(100);
    if problem == Problem::Dirichlet && kmax == 0 {
        return Err(Error::Parameter(
            "kmax must be at least 1 for Dirichlet problems".into(),
        ));
    }
    Ok(kmax)
}

fn resolve_io(io: &IoArgs, cfg: &RunConfig) -> (Format, Option<PathBuf>) {
    (
        io.format.or(cfg.format).unwrap_or(Format::Json),
        io.output.clone().or_else(|| cfg.output.clone()),
    )
}

fn apply_precision(spec: &mut Spectrum, precision: Option<Precision>, cfg: &RunConfig) {
    if precision.or(cfg.precision) == Some(Precision::Float) {
        for e in &mut spec.entries {
            e.label = None;
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn conjecture_note(v: &ConjectureVerdict) {
    if !v.holds {
        eprintln!(
            "verdict: fails within k <= {}; worst margin {} at k = {} (recorded, not asserted)",
            v.k_range[1], v.worst_margin, v.worst_k
        );
    }
}

fn run_spectrum(args: SpectrumArgs, cfg: &RunConfig) -> Result<i32> {
    let domain = resolve_domain(args.domain.as_deref(), cfg)?;
    let count = args.count.or(cfg.kmax).unwrap_or(16);
    if domain.problem() == Problem::Dirichlet && count == 0 {
        return Err(Error::Parameter(
            "count must be at least 1 for Dirichlet problems".into(),
        ));
    }
    let mut spec = spectrum(&domain, count)?;
    spec.guaranteed_count = spec.guaranteed_count.min(count);
    apply_precision(&mut spec, args.precision, cfg);
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_spectrum(&spec, format)?, path.as_deref())?;
    Ok(0)
}

fn run_check(args: CheckArgs, cfg: &RunConfig) -> Result<i32> {
    let id = InequalityId::from_str(&args.inequality)?;
    let domain = resolve_domain(args.domain.as_deref(), cfg)?;
    let kmax = resolve_kmax(args.kmax, cfg, domain.problem())?;
    let mut spec = spectrum(&domain, kmax + 1)?;
    apply_precision(&mut spec, args.precision, cfg);
    let reports = check_range(&spec, id, kmax)?;
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_reports(&reports, format)?, path.as_deref())?;
    let failures: Vec<usize> = reports.iter().filter(|r| !r.holds).map(|r| r.k).collect();
    if failures.is_empty() {
        Ok(0)
    } else {
        eprintln!(
            "{id} fails on {} at {} of {} indices, first at k = {}",
            spec.domain,
            failures.len(),
            reports.len(),
            failures[0]
        );
        Ok(1)
    }
}

fn run_bounds(args: BoundsArgs, cfg: &RunConfig) -> Result<i32> {
    let domain = resolve_domain(args.domain.as_deref(), cfg)?;
    let kmax = resolve_kmax(args.kmax, cfg, domain.problem())?;
    let mut spec = spectrum(&domain, kmax + 1)?;
    apply_precision(&mut spec, args.precision, cfg);
    let rows = gap_bound_table(&spec, kmax)?;
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_bounds(&rows, format)?, path.as_deref())?;
    Ok(0)
}

fn run_verify_prop(args: VerifyPropArgs, cfg: &RunConfig) -> Result<i32> {
    let kmax = args.kmax.or(cfg.kmax).unwrap_or(100);
    let verdict = match args.id {
        PropId::Prop1 => eigengap::conjecture::prop1_verify(args.n.unwrap_or(2), kmax)?,
        PropId::Prop2 => {
            if args.n.is_some() {
                return Err(Error::Parameter(
                    "--n applies only to the cube proposition".into(),
                ));
            }
            eigengap::conjecture::prop2_verify(kmax)?
        }
    };
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_verdict(&verdict, format)?, path.as_deref())?;
    if verdict.holds {
        Ok(0)
    } else {
        eprintln!(
            "proposition fails: worst margin {} at k = {}",
            verdict.worst_margin, verdict.worst_k
        );
        Ok(1)
    }
}

fn run_conjecture(args: ConjectureArgs, cfg: &RunConfig) -> Result<i32> {
    let implied = match args.id {
        ConjToken::ConZ1S1 => Some(CoeffToken::S1),
        ConjToken::ConZ1PrimeS2 => Some(CoeffToken::S2),
        _ => None,
    };
    match (args.coeff, implied) {
        (Some(given), Some(expected)) if given != expected => {
            return Err(Error::Parameter(format!(
                "--coeff {given:?} contradicts the identifier's coefficient {expected:?}"
            )
            .to_lowercase()))
        }
        (Some(_), None) => {
            return Err(Error::Parameter(
                "--coeff applies only to the shape-coefficient conjectures".into(),
            ))
        }
        _ => {}
    }
    let domain = resolve_domain(args.domain.as_deref(), cfg)?;
    let kmax = resolve_kmax(args.kmax, cfg, domain.problem())?;
    let mut spec = spectrum(&domain, kmax + 1)?;
    apply_precision(&mut spec, args.precision, cfg);
    let verdict = match args.id {
        ConjToken::ConZ1S1 => gap_conjecture_check(&spec, kmax, CoeffMode::S1)?,
        ConjToken::ConZ1PrimeS2 => gap_conjecture_check(&spec, kmax, CoeffMode::S2)?,
        ConjToken::ConZ1Cuboid => cuboid_conjecture_check(&spec, kmax)?,
        ConjToken::ConZ5Triangle => triangle_conjecture_check(&spec, kmax)?,
        ConjToken::PpwGapForm => ppw_gap_form_check(&spec, kmax)?,
    };
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_verdict(&verdict, format)?, path.as_deref())?;
    conjecture_note(&verdict);
    Ok(0)
}

fn run_scan(args: ScanArgs, cfg: &RunConfig) -> Result<i32> {
    let kmax = args.kmax.or(cfg.kmax).unwrap_or(100);
    let family = match args.family {
        FamilyToken::TrianglePair => {
            if args.range.is_some() {
                return Err(Error::Parameter(
                    "--range applies only to the rectangle and box families".into(),
                ));
            }
            ScanFamily::TrianglePair
        }
        FamilyToken::Rectangles | FamilyToken::Boxes => {
            let range = args
                .range
                .as_deref()
                .ok_or_else(|| Error::Parameter("missing --range start:end:step".into()))?;
            let grid = GridRange::parse(range)?;
            match args.family {
                FamilyToken::Rectangles => ScanFamily::Rectangles(grid),
                _ => ScanFamily::Boxes(grid),
            }
        }
    };
    let id = match args.conjecture {
        ScanConjToken::ConZ1S1 => ConjectureId::ConZ1S1,
        ScanConjToken::ConZ1PrimeS2 => ConjectureId::ConZ1PrimeS2,
        ScanConjToken::ConZ1Cuboid => ConjectureId::ConZ1Cuboid,
    };
    let result = eigengap::conjecture::counterexample_scan(&family, id, kmax)?;
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_scan(&result, format)?, path.as_deref())?;
    if !result.violations.is_empty() {
        eprintln!(
            "{} violations recorded across {} members (recorded, not asserted)",
            result.violations.len(),
            result.results.len()
        );
    }
    Ok(0)
}

fn run_report(args: ReportArgs, cfg: &RunConfig) -> Result<i32> {
    let manifest = suite::run_paper_suite(args.mutate.as_deref())?;
    for c in &manifest.checks {
        eprintln!(
            "{}: {} ({} ms) {}",
            c.id,
            if c.pass { "pass" } else { "FAIL" },
            c.elapsed_ms,
            c.detail
        );
    }
    let (format, path) = resolve_io(&args.io, cfg);
    emit(&output::render_manifest(&manifest, format)?, path.as_deref())?;
    Ok(if manifest.all_pass { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = load_config(cli.config.as_deref(), cli.command.name())?;
    match cli.command {
        Command::Spectrum(args) => run_spectrum(args, &cfg),
        Command::Check(args) => run_check(args, &cfg),
        Command::Bounds(args) => run_bounds(args, &cfg),
        Command::VerifyProp(args) => run_verify_prop(args, &cfg),
        Command::Conjecture(args) => run_conjecture(args, &cfg),
        Command::Scan(args) => run_scan(args, &cfg),
        Command::Report(args) => run_report(args, &cfg),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) | Error::Unsupported(_) => 2,
        Error::Numeric(_) | Error::Budget(_) | Error::Serialization(_) => 3,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
