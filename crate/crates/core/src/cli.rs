//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a computed invariant contradicts the expected
//! value, 2 usage error, 3 resource limit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coinvariants::{CohomologyReport, FakeDegreeTable};
use crate::error::Error;
use crate::gw::{parse_expression, FieldDescriptor, GwElement, GwInvariants, Justification};
use crate::linalg::IntMatrix;
use crate::pipeline::{compute_report, EulerReport, ReportOptions, SCHEMA_VERSION};
use crate::polynomial::IntPolynomial;
use crate::root_datum::{
    build_root_datum, degrees, generate_weyl, length_poly, BasisConvention, CartanSpec, Isogeny, Series,
    DEFAULT_ELEMENT_LIMIT,
};
use crate::tori::{tori_report_for, ToriReport, TorusMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable overriding the default element limit.
pub const LIMIT_ENV: &str = "CHI_TORUS_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "chi-torus", version, about = "Certify that the A1-Euler characteristic of G/N is a unit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: rank, signature, GW class and unit verdict.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        field: Option<String>,
        /// Include per-stage wall time (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weyl group statistics and Poincaré polynomial.
    Weyl {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fake-degree table and graded invariant dimensions.
    Coinv {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Involution classes, compact ranks and orbit Euler characteristics.
    Tori {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Split)]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a form expression such as "<2,3> - <6>".
    Gw {
        expression: String,
        #[arg(long, default_value = "real-closed")]
        field: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct GroupArgs {
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    isogeny: Option<String>,
    #[arg(long)]
    central_rank: Option<usize>,
    /// Element limit for Weyl group generation.
    #[arg(long)]
    limit: Option<usize>,
    /// TOML or JSON file with series/rank/isogeny/central_rank/field/limit.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Split,
    Compact,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    series: Option<Series>,
    rank: Option<usize>,
    isogeny: Option<Isogeny>,
    central_rank: Option<usize>,
    field: Option<FieldDescriptor>,
    limit: Option<usize>,
}

fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    } else {
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

struct Resolved {
    spec: CartanSpec,
    field: Option<FieldDescriptor>,
    limit: usize,
}

fn resolve(args: &GroupArgs) -> Result<Resolved, CliError> {
    let cfg = match &args.config {
        Some(p) => read_config(p)?,
        None => ConfigFile::default(),
    };
    let series = match &args.series {
        Some(s) => s.parse()?,
        None => cfg.series.ok_or_else(|| CliError::Usage("--series is required".into()))?,
    };
    let rank = args
        .rank
        .or(cfg.rank)
        .ok_or_else(|| CliError::Usage("--rank is required".into()))?;
    let isogeny = match &args.isogeny {
        Some(s) => s.parse()?,
        None => cfg.isogeny.unwrap_or(Isogeny::SimplyConnected),
    };
    let central_rank = args.central_rank.or(cfg.central_rank).unwrap_or(0);
    let env_limit = match std::env::var(LIMIT_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{LIMIT_ENV}={v:?} is not a number")))?,
        ),
        Err(_) => None,
    };
    let limit = args.limit.or(env_limit).or(cfg.limit).unwrap_or(DEFAULT_ELEMENT_LIMIT);
    let spec = CartanSpec { series, rank, isogeny, central_rank };
    spec.validate()?;
    Ok(Resolved { spec, field: cfg.field, limit })
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::GroupTooLarge { .. }) => EXIT_LIMIT,
            CliError::Lib(e) if e.is_invariant_violation() => EXIT_VIOLATION,
            CliError::Lib(_) | CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct WeylSummary {
    schema: u32,
    spec: CartanSpec,
    basis: BasisConvention,
    cartan_matrix: Vec<Vec<i64>>,
    lattice_rank: usize,
    order: usize,
    longest_length: usize,
    positive_roots: usize,
    degrees: Vec<usize>,
    poincare_poly: IntPolynomial,
    generators: Vec<IntMatrix>,
}

#[derive(Serialize)]
struct FakeDegreeRow {
    index: usize,
    length: usize,
    poly: IntPolynomial,
}

#[derive(Serialize)]
struct CoinvSummary {
    schema: u32,
    spec: CartanSpec,
    #[serde(flatten)]
    cohomology: CohomologyReport,
    fake_degrees: Vec<FakeDegreeRow>,
}

#[derive(Serialize)]
struct ToriSummary {
    schema: u32,
    spec: CartanSpec,
    #[serde(flatten)]
    report: ToriReport,
}

#[derive(Serialize)]
struct GwSummary {
    schema: u32,
    expression: String,
    element: GwElement,
    invariants: GwInvariants,
    is_unit: bool,
    justification: Justification,
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `out` (or `--out FILE`) and diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((output, body, code)) => match emit(&output, &body, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {}", e.message());
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(output: &OutputArgs, body: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

type Dispatched = (OutputArgs, String, i32);

fn dispatch(cmd: Command) -> Result<Dispatched, CliError> {
    match cmd {
        Command::Verify { group, field, timings, output } => {
            let r = resolve(&group)?;
            let field = match field {
                Some(f) => f.parse()?,
                None => r.field.unwrap_or(FieldDescriptor::RealClosed),
            };
            let report = compute_report(r.spec, field, &ReportOptions { limit: r.limit, timings })?;
            let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
            let body = render(output.format, &report, || verify_text(&report));
            Ok((output, body, code))
        }
        Command::Weyl { group, output } => {
            let r = resolve(&group)?;
            let datum = build_root_datum(r.spec)?;
            let w = generate_weyl(&datum, r.limit)?;
            let summary = WeylSummary {
                schema: SCHEMA_VERSION,
                spec: r.spec,
                basis: datum.basis,
                cartan_matrix: datum.cartan_matrix.clone(),
                lattice_rank: datum.n,
                order: w.order(),
                longest_length: w.longest_length(),
                positive_roots: datum.roots().len() / 2,
                degrees: degrees(&datum, &w)?,
                poincare_poly: length_poly(&w),
                generators: w.generators().to_vec(),
            };
            let body = render(output.format, &summary, || {
                let mut t = String::new();
                line(&mut t, "group", r.spec);
                line(&mut t, "basis", summary.basis);
                line(&mut t, "order", summary.order);
                line(&mut t, "longest length", summary.longest_length);
                line(&mut t, "positive roots", summary.positive_roots);
                line(&mut t, "degrees", format!("{:?}", summary.degrees));
                line(&mut t, "poincare", &summary.poincare_poly);
                t
            });
            Ok((output, body, EXIT_OK))
        }
        Command::Coinv { group, output } => {
            let r = resolve(&group)?;
            let datum = build_root_datum(r.spec)?;
            let w = generate_weyl(&datum, r.limit)?;
            let degs = degrees(&datum, &w)?;
            let table = FakeDegreeTable::build(&datum, &w, &degs)?;
            let cohomology = CohomologyReport::from_table(&w, degs, &table)?;
            let ok = cohomology.rank_euler == 1 && cohomology.regular_representation;
            let fake_degrees = table
                .polys
                .into_iter()
                .enumerate()
                .map(|(index, poly)| FakeDegreeRow { index, length: w.element(index).length, poly })
                .collect();
            let summary = CoinvSummary { schema: SCHEMA_VERSION, spec: r.spec, cohomology, fake_degrees };
            let body = render(output.format, &summary, || {
                let c = &summary.cohomology;
                let mut t = String::new();
                line(&mut t, "group", r.spec);
                line(&mut t, "degrees", format!("{:?}", c.degrees));
                line(&mut t, "poincare", &c.poincare_poly);
                line(&mut t, "invariant dims", format!("{:?}", c.invariant_dims));
                line(&mut t, "cohomological degrees", format!("{:?}", c.cohomological_degrees));
                line(&mut t, "regular representation", c.regular_representation);
                line(&mut t, "rank euler", c.rank_euler);
                for row in &summary.fake_degrees {
                    t.push_str(&format!("  P[{}] (length {}) = {}\n", row.index, row.length, row.poly));
                }
                t
            });
            Ok((output, body, if ok { EXIT_OK } else { EXIT_VIOLATION }))
        }
        Command::Tori { group, mode, output } => {
            let r = resolve(&group)?;
            let datum = build_root_datum(r.spec)?;
            let w = generate_weyl(&datum, r.limit)?;
            let mode = match mode {
                ModeArg::Split => TorusMode::Split,
                ModeArg::Compact => TorusMode::Compact,
            };
            let report = tori_report_for(&w, mode)?;
            let code = if report.total_chi == 1 { EXIT_OK } else { EXIT_VIOLATION };
            let summary = ToriSummary { schema: SCHEMA_VERSION, spec: r.spec, report };
            let body = render(output.format, &summary, || {
                let rep = &summary.report;
                let mut t = String::new();
                line(&mut t, "group", r.spec);
                t.push_str("  size    s    a    c  rk_c  chi\n");
                for c in &rep.classes {
                    let d = c.class.decomposition;
                    t.push_str(&format!(
                        "{:>6} {:>4} {:>4} {:>4} {:>5} {:>4}\n",
                        c.class.class_size, d.s, d.a, d.c, c.class.compact_rank, c.chi
                    ));
                }
                line(&mut t, "rk_c G", rep.max_compact_rank);
                line(&mut t, "maximizers", rep.maximizer_count);
                line(&mut t, "total chi", rep.total_chi);
                t
            });
            Ok((output, body, code))
        }
        Command::Gw { expression, field, output } => {
            let field: FieldDescriptor = field.parse()?;
            let element = parse_expression(field, &expression)?;
            let verdict = element.is_unit();
            let summary = GwSummary {
                schema: SCHEMA_VERSION,
                invariants: element.invariants(),
                element,
                expression,
                is_unit: verdict.is_unit,
                justification: verdict.justification,
            };
            let body = render(output.format, &summary, || {
                let mut t = String::new();
                line(&mut t, "field", field);
                line(&mut t, "element", &summary.element);
                line(&mut t, "rank", summary.invariants.rank);
                line(&mut t, "signatures", format!("{:?}", summary.invariants.signatures));
                line(&mut t, "discriminant", summary.invariants.disc);
                line(&mut t, "unit", format!("{} ({})", summary.is_unit, summary.justification));
                t
            });
            Ok((output, body, EXIT_OK))
        }
    }
}

fn line(t: &mut String, key: &str, value: impl std::fmt::Display) {
    t.push_str(&format!("{key:<24}{value}\n"));
}

fn verify_text(r: &EulerReport) -> String {
    let mut t = String::new();
    line(&mut t, "group", r.spec);
    line(&mut t, "field", r.field);
    line(&mut t, "basis", r.basis);
    line(&mut t, "weyl order", r.weyl_order);
    line(&mut t, "degrees", format!("{:?}", r.degrees));
    line(&mut t, "rank chi", r.rank_chi);
    if let Some(s) = r.sgn_chi {
        line(&mut t, "sgn chi", s);
    }
    line(&mut t, "flag euler", format!("{} / |W| = {}", r.flag_euler.0, r.flag_euler.1));
    line(&mut t, "gw element", &r.gw_element);
    line(&mut t, "unit", format!("{} ({})", r.is_unit, r.justification));
    line(&mut t, "clause", format!("{}: {}", r.theorem_clause, r.clause_note));
    line(&mut t, "splitting principle", r.splitting_principle_applies);
    if let Some(ts) = &r.timings {
        for s in ts {
            line(&mut t, &format!("time {}", s.stage), format!("{:.3} ms", s.millis));
        }
    }
    line(&mut t, "verdict", if r.passed() { "PASS".to_string() } else { r.violations.join("; ") });
    t
}
