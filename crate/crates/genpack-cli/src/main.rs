//! Command-line front end for the packing library.
//!
//! One binary, seven subcommands: `verify`, `bound`, `construct`,
//! `search`, `convert`, `blocks`, and `catalogue`.  Results go to
//! standard output, diagnostics to standard error.  The default output is
//! aligned tables for reading; `--machine` switches every subcommand to
//! one `key=value` record per line, byte-stable across runs for the
//! deterministic subcommands.
//!
//! Exit codes: 0 success or proven, 10 best-known or unknown, 20 out of
//! constructive scope, 64 usage error, 65 data error, 70 internal error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use genpack::blocks::{self, ColouredTriplePacking, FactorList, HowellArray, ProviderStatus};
use genpack::bounds::{self, BoundKind, BoundReport};
use genpack::catalogue;
use genpack::construct::{self, Optimality};
use genpack::model::{GeneralizedPacking, PackingInstance};
use genpack::search::{self, Decision, SearchConfig, SearchStatus};
use genpack::views;

const EXIT_BEST_KNOWN: u8 = 10;
const EXIT_OUT_OF_SCOPE: u8 = 20;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

/// Like `out!`, but a closed pipe ends the process quietly instead of
/// panicking, so `genpack ... | head` behaves.
macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), false) };
}

/// Like `outln!`, with the same closed-pipe behaviour as [`out!`].
macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*), true) };
}

fn emit(args: std::fmt::Arguments<'_>, newline: bool) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = if newline {
        writeln!(stdout, "{args}")
    } else {
        write!(stdout, "{args}")
    };
    if result.is_err() {
        std::process::exit(0);
    }
}

/// A failed invocation: the message goes to standard error, the code to
/// the shell.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn out_of_scope(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_OUT_OF_SCOPE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

type CliResult = Result<u8, Failure>;

#[derive(Parser)]
#[command(
    name = "genpack",
    version,
    about = "Construct, verify, bound, and search generalized packing designs"
)]
struct Cli {
    /// Emit one key=value record per line instead of tables.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a packing file and check every packing constraint.
    Verify {
        /// Packing in the canonical text format.
        file: PathBuf,
    },
    /// Report the exact packing number or the sharpest upper bound.
    Bound {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Build a largest known packing for the instance.
    Construct {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Write the packing here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Seconds of search allowed when no direct construction applies.
        #[arg(long, default_value_t = 60.0, value_name = "S")]
        budget: f64,
    },
    /// Maximise by exhaustive search, or decide a target size.
    Search {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Seconds of search allowed.
        #[arg(long, default_value_t = 60.0, value_name = "S")]
        budget: f64,
        /// Decide whether a packing of exactly this size exists.
        #[arg(long, value_name = "N")]
        target: Option<usize>,
        /// Worker threads (more than one trades reproducible node counts
        /// for speed).
        #[arg(long, default_value_t = 1, value_name = "N")]
        threads: usize,
        /// Print the certificate in the canonical packing format.
        #[arg(long)]
        certificate: bool,
        /// Write the certificate here.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Re-express a packing file in another form.
    Convert {
        /// Packing in the canonical text format.
        file: PathBuf,
        /// Target form: a cell array, colour classes, packing-array rows,
        /// or a DOT graph with the leave dashed.
        #[arg(long, value_parser = ["array", "classes", "pa", "dot"])]
        to: String,
    },
    /// Emit a classical building block in its text form.
    Blocks {
        #[command(subcommand)]
        object: BlockObject,
    },
    /// Inspect the embedded reference designs.
    Catalogue {
        #[command(subcommand)]
        action: CatalogueAction,
    },
}

/// The instance flags shared by bound, construct, and search.
#[derive(Args)]
struct InstanceArgs {
    /// Part sizes, comma-separated (e.g. 11,6).
    #[arg(short = 'v', value_name = "V1,V2,...")]
    v: String,
    /// Block sizes per part, comma-separated, same length as -v.
    #[arg(short = 'k', value_name = "K1,K2,...")]
    k: String,
    /// Strength: the constraint covers t-subsets.
    #[arg(short = 't', default_value_t = 2)]
    t: usize,
    /// Index: how often a t-subset may be covered.
    #[arg(short = 'l', default_value_t = 1)]
    lambda: usize,
}

impl InstanceArgs {
    fn instance(&self) -> Result<PackingInstance, Failure> {
        let v = parse_list(&self.v, 'v')?;
        let k = parse_list(&self.k, 'k')?;
        PackingInstance::new(v, k, self.t, self.lambda)
            .map_err(|e| Failure::usage(format!("invalid instance: {e}")))
    }
}

#[derive(Subcommand)]
enum BlockObject {
    /// Matching decomposition of the complete graph on v points.
    Factorization { v: usize },
    /// Maximum packing of triples on v points, in packing format.
    TripleSystem { v: usize },
    /// The cyclic rows x cols Latin rectangle.
    LatinRectangle { rows: usize, cols: usize },
    /// A row-orthogonal Latin rectangle pair, two grids.
    Molr { rows: usize, cols: usize },
    /// Room square of odd side n on the symbols 1..=n+1.
    Room { side: usize },
    /// Howell array: side x side, every symbol once per row and column.
    Howell {
        side: usize,
        symbols: usize,
        /// Seconds of search allowed for sizes with no direct route.
        #[arg(long, default_value_t = 60.0, value_name = "S")]
        budget: f64,
    },
    /// Small Kirkman signal set on v points, one colour class per line.
    SignalSet { v: usize },
}

#[derive(Subcommand)]
enum CatalogueAction {
    /// One line per fixture: id, instance, size, provenance.
    List,
    /// Print one fixture's metadata and canonical text.
    Show { id: String },
    /// Re-verify every fixture against its expectations.
    Check,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { EXIT_USAGE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let machine = cli.machine;
    match run(cli.command, machine) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("genpack: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, machine: bool) -> CliResult {
    match command {
        Command::Verify { file } => cmd_verify(&file, machine),
        Command::Bound { inst } => cmd_bound(&inst.instance()?, machine),
        Command::Construct {
            inst,
            output,
            budget,
        } => cmd_construct(&inst.instance()?, output.as_deref(), budget, machine),
        Command::Search {
            inst,
            budget,
            target,
            threads,
            certificate,
            output,
        } => cmd_search(
            &inst.instance()?,
            budget,
            target,
            threads,
            certificate,
            output.as_deref(),
            machine,
        ),
        Command::Convert { file, to } => cmd_convert(&file, &to, machine),
        Command::Blocks { object } => cmd_blocks(object, machine),
        Command::Catalogue { action } => cmd_catalogue(action, machine),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn parse_list(text: &str, flag: char) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|item| {
            item.parse::<usize>().map_err(|_| {
                Failure::usage(format!(
                    "-{flag} expects comma-separated integers with no spaces, got '{text}'"
                ))
            })
        })
        .collect()
}

fn parse_budget(seconds: f64) -> Result<Duration, Failure> {
    if !seconds.is_finite() || seconds <= 0.0 {
        return Err(Failure::usage(format!(
            "--budget must be a positive number of seconds, got {seconds}"
        )));
    }
    Ok(Duration::from_secs_f64(seconds))
}

fn read_packing(path: &Path) -> Result<GeneralizedPacking, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    GeneralizedPacking::parse(&text)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn instance_line(inst: &PackingInstance) -> String {
    format!(
        "t={} lambda={} v={} k={}",
        inst.t(),
        inst.lambda(),
        join(inst.v()),
        join(inst.k())
    )
}

/// Two aligned columns, one row per line.
fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(key, _)| key.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, value) in rows {
        let _ = writeln!(out, "{key:<width$}  {value}");
    }
    out
}

/// One machine-readable record: space-separated key=value pairs.
fn record(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(key, value)| format!("{key}={value}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn kind_str(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::UpperBound => "upper-bound",
        BoundKind::Exact => "exact",
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(file: &Path, machine: bool) -> CliResult {
    let packing = read_packing(file)?;
    let report = packing
        .verify()
        .map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
    if machine {
        outln!(
            "{}",
            record(&[
                ("valid", report.valid.to_string()),
                ("blocks_checked", report.blocks_checked.to_string()),
                ("violations", report.violations.len().to_string()),
            ])
        );
        for violation in &report.violations {
            let witness = violation
                .witness
                .iter()
                .map(|part| join(part))
                .collect::<Vec<_>>()
                .join(";");
            outln!(
                "{}",
                record(&[
                    ("violation_t_vector", join(&violation.t_vector)),
                    ("witness", witness),
                    ("count", violation.count.to_string()),
                    ("lambda", violation.lambda.to_string()),
                ])
            );
        }
    } else {
        let mut rows = vec![
            ("instance", instance_line(packing.instance())),
            ("valid", report.valid.to_string()),
            ("blocks", report.blocks_checked.to_string()),
        ];
        for violation in &report.violations {
            let witness = violation
                .witness
                .iter()
                .map(|part| join(part))
                .collect::<Vec<_>>()
                .join(" ; ");
            rows.push((
                "violation",
                format!(
                    "tuple {} covered {} times, lambda {}",
                    witness, violation.count, violation.lambda
                ),
            ));
        }
        out!("{}", table(&rows));
    }
    if report.valid {
        Ok(0)
    } else {
        Err(Failure::data(format!(
            "{}: packing is invalid ({} violations)",
            file.display(),
            report.violations.len()
        )))
    }
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

fn cmd_bound(inst: &PackingInstance, machine: bool) -> CliResult {
    let upper: BoundReport = bounds::generalized_upper_bound(inst);
    let exact = bounds::known_packing_number(inst);
    if machine {
        outln!(
            "{}",
            record(&[
                ("value", upper.value.to_string()),
                ("kind", kind_str(upper.kind).to_string()),
                ("provenance", upper.provenance.to_string()),
            ])
        );
        if let Some(exact) = exact {
            outln!(
                "{}",
                record(&[
                    ("exact", exact.value.to_string()),
                    ("provenance", exact.provenance.to_string()),
                ])
            );
        }
    } else {
        let mut rows = vec![
            ("instance", instance_line(inst)),
            ("value", upper.value.to_string()),
            ("kind", kind_str(upper.kind).to_string()),
            ("provenance", upper.provenance.to_string()),
        ];
        for (description, value) in &upper.contributing_terms {
            rows.push(("term", format!("{description} = {value}")));
        }
        if let Some(exact) = exact {
            rows.push(("exact", format!("{} ({})", exact.value, exact.provenance)));
        }
        out!("{}", table(&rows));
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn cmd_construct(
    inst: &PackingInstance,
    output: Option<&Path>,
    budget: f64,
    machine: bool,
) -> CliResult {
    let budget = parse_budget(budget)?;
    let result = construct::construct_max_with(inst, budget)
        .map_err(|e| Failure::out_of_scope(e.to_string()))?;
    let summary = [
        ("size", result.size().to_string()),
        ("optimal", result.optimal().as_str().to_string()),
        ("method", result.method().to_string()),
        ("bound", result.bound().value.to_string()),
        ("bound_kind", kind_str(result.bound().kind).to_string()),
        ("bound_provenance", result.bound().provenance.to_string()),
    ];
    if machine {
        outln!("{}", record(&summary));
    } else {
        let mut rows = vec![("instance", instance_line(inst))];
        rows.extend(summary.iter().map(|(k, v)| (*k, v.clone())));
        out!("{}", table(&rows));
    }
    let text = result.packing().serialize();
    match output {
        Some(path) => write_out(path, &text)?,
        None => out!("{text}"),
    }
    match result.optimal() {
        Optimality::Proven => Ok(0),
        Optimality::BestKnown | Optimality::Unknown => Ok(EXIT_BEST_KNOWN),
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    inst: &PackingInstance,
    budget: f64,
    target: Option<usize>,
    threads: usize,
    certificate: bool,
    output: Option<&Path>,
    machine: bool,
) -> CliResult {
    if threads == 0 {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let cfg = SearchConfig {
        time_budget: parse_budget(budget)?,
        threads,
        ..SearchConfig::default()
    };
    if let Some(target) = target {
        return match search::decide_size(inst, target, &cfg) {
            Decision::Yes(packing) => {
                emit_decision(inst, target, "yes", machine);
                emit_certificate(&packing, certificate, output)?;
                Ok(0)
            }
            Decision::No => {
                emit_decision(inst, target, "no", machine);
                Ok(0)
            }
            Decision::Unknown => {
                emit_decision(inst, target, "unknown", machine);
                Ok(EXIT_BEST_KNOWN)
            }
        };
    }
    let result = search::max_packing_search(inst, &cfg);
    if machine {
        outln!(
            "{}",
            record(&[
                ("size", result.size.to_string()),
                ("status", result.status.as_str().to_string()),
                ("nodes", result.nodes.to_string()),
            ])
        );
    } else {
        out!(
            "{}",
            table(&[
                ("instance", instance_line(inst)),
                ("size", result.size.to_string()),
                ("status", result.status.as_str().to_string()),
                ("nodes", result.nodes.to_string()),
                ("elapsed", format!("{:.3}s", result.elapsed.as_secs_f64())),
            ])
        );
    }
    emit_certificate(&result.best, certificate, output)?;
    match result.status {
        SearchStatus::ProvenOptimal => Ok(0),
        SearchStatus::BestFound | SearchStatus::InfeasibleTarget => Ok(EXIT_BEST_KNOWN),
    }
}

fn emit_decision(inst: &PackingInstance, target: usize, decision: &str, machine: bool) {
    if machine {
        outln!(
            "{}",
            record(&[
                ("target", target.to_string()),
                ("decision", decision.to_string()),
            ])
        );
    } else {
        out!(
            "{}",
            table(&[
                ("instance", instance_line(inst)),
                ("target", target.to_string()),
                ("decision", decision.to_string()),
            ])
        );
    }
}

fn emit_certificate(
    packing: &GeneralizedPacking,
    certificate: bool,
    output: Option<&Path>,
) -> Result<(), Failure> {
    if let Some(path) = output {
        write_out(path, &packing.serialize())?;
    }
    if certificate {
        out!("{}", packing.serialize());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

fn cmd_convert(file: &Path, to: &str, machine: bool) -> CliResult {
    let packing = read_packing(file)?;
    let bad = |e: genpack::model::InstanceError| Failure::data(format!("{}: {e}", file.display()));
    match to {
        "array" => {
            let array = views::to_array_form(&packing).map_err(bad)?;
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("role", array.role().as_str().to_string()),
                        ("rows", array.rows().to_string()),
                        ("cols", array.cols().to_string()),
                        ("symbols", array.symbols().to_string()),
                    ])
                );
            } else {
                let role = array
                    .classify()
                    .map(|label| format!("{} ({label})", array.role().as_str()))
                    .unwrap_or_else(|| array.role().as_str().to_string());
                outln!("# {role}, {} symbols", array.symbols());
            }
            out!("{}", array.text());
        }
        "classes" => {
            let classes = views::to_colour_classes(&packing).map_err(bad)?;
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("classes", classes.num_nonempty().to_string()),
                        ("colour_type", classes.colour_type().replace(' ', "_")),
                    ])
                );
            } else {
                outln!("# colour type {}", classes.colour_type());
            }
            for class in classes.classes() {
                if class.is_empty() {
                    outln!(".");
                } else {
                    let line = class.iter().map(|s| join(s)).collect::<Vec<_>>().join("|");
                    outln!("{line}");
                }
            }
        }
        "pa" => {
            let array = views::to_packing_array(&packing).map_err(bad)?;
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("rows", array.rows().to_string()),
                        ("cols", array.cols().to_string()),
                        ("symbols", array.symbols().to_string()),
                    ])
                );
            }
            out!("{}", array.text());
        }
        "dot" => {
            let dot = views::dot_with_leave(&packing).map_err(bad)?;
            out!("{dot}");
        }
        _ => unreachable!("clap restricts the --to values"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// blocks
// ---------------------------------------------------------------------------

fn cmd_blocks(object: BlockObject, machine: bool) -> CliResult {
    match object {
        BlockObject::Factorization { v } => {
            if v < 2 {
                return Err(Failure::usage("factorization needs at least 2 points"));
            }
            let factors = if v % 2 == 0 {
                blocks::one_factorization(v)
            } else {
                blocks::near_one_factorization(v)
            };
            emit_header(machine, "constructed", "circle-method", &describe_factors(&factors));
            out!("{}", render_factors(&factors));
            Ok(0)
        }
        BlockObject::TripleSystem { v } => {
            if v < 3 {
                return Err(Failure::usage("triple systems need at least 3 points"));
            }
            let out = blocks::max_triple_packing(v);
            emit_provider(machine, out.status, out.method, "triple-system")?;
            if let Some(packing) = out.payload {
                out!("{}", packing.serialize());
            }
            Ok(0)
        }
        BlockObject::LatinRectangle { rows, cols } => {
            if rows < 1 || rows > cols {
                return Err(Failure::usage("needs 1 <= rows <= cols"));
            }
            let grid = blocks::latin_rectangle(rows, cols);
            emit_header(machine, "constructed", "cyclic", &format!("{rows}x{cols}"));
            out!("{}", render_rectangle(&grid));
            Ok(0)
        }
        BlockObject::Molr { rows, cols } => {
            if rows < 1 || rows > cols {
                return Err(Failure::usage("needs 1 <= rows <= cols"));
            }
            let out = blocks::molr_pair(rows, cols);
            emit_provider(machine, out.status, out.method, "molr")?;
            if let Some((a, b)) = out.payload {
                out!("{}", render_rectangle(&a));
                outln!("");
                out!("{}", render_rectangle(&b));
            }
            Ok(0)
        }
        BlockObject::Room { side } => {
            if side % 2 == 0 || side < 3 {
                return Err(Failure::usage("Room squares need an odd side of at least 3"));
            }
            let out = blocks::strong_starter_adder(side);
            emit_provider(machine, out.status, out.method, "room")?;
            if let Some(starter) = out.payload {
                out!("{}", render_array(&starter.room_square()));
            }
            Ok(0)
        }
        BlockObject::Howell {
            side,
            symbols,
            budget,
        } => {
            let budget = parse_budget(budget)?;
            if side < 1 || symbols < 2 {
                return Err(Failure::usage("needs side >= 1 and symbols >= 2"));
            }
            let out = blocks::howell_design(side, symbols, budget);
            emit_provider(machine, out.status, out.method, "howell")?;
            if let Some(array) = out.payload {
                out!("{}", render_array(&array));
            }
            Ok(0)
        }
        BlockObject::SignalSet { v } => {
            if v < 3 {
                return Err(Failure::usage("signal sets need at least 3 points"));
            }
            let out = blocks::skss(v);
            emit_provider(machine, out.status, out.method, "signal-set")?;
            if let Some(colouring) = out.payload {
                out!("{}", render_colouring(&colouring));
            }
            Ok(0)
        }
    }
}

fn emit_header(machine: bool, status: &str, method: &str, detail: &str) {
    if machine {
        outln!(
            "{}",
            record(&[
                ("status", status.to_string()),
                ("method", method.to_string()),
            ])
        );
    } else {
        outln!("# {detail} via {method}");
    }
}

fn emit_provider(
    machine: bool,
    status: ProviderStatus,
    method: &str,
    object: &str,
) -> Result<(), Failure> {
    match status {
        ProviderStatus::Constructed => {
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("status", status.as_str().to_string()),
                        ("method", method.to_string()),
                    ])
                );
            } else {
                outln!("# {object} via {method}");
            }
            Ok(())
        }
        ProviderStatus::Nonexistent => {
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("status", status.as_str().to_string()),
                        ("method", method.to_string()),
                    ])
                );
            } else {
                outln!("# {object} does not exist ({method})");
            }
            Ok(())
        }
        ProviderStatus::ExistsNoProvider => Err(Failure::out_of_scope(format!(
            "the {object} exists, but no construction here covers it ({method})"
        ))),
        ProviderStatus::Unknown => Err(Failure {
            code: EXIT_BEST_KNOWN,
            message: format!("{object}: existence unresolved within the budget ({method})"),
        }),
    }
}

fn describe_factors(factors: &FactorList) -> String {
    let kind = match factors.kind() {
        blocks::FactorKind::Perfect => "one-factorization",
        blocks::FactorKind::Near => "near-one-factorization",
    };
    format!("{kind} of K_{}", factors.v())
}

fn render_factors(factors: &FactorList) -> String {
    let mut out = String::new();
    for class in factors.classes() {
        let line = class
            .iter()
            .map(|(a, b)| format!("{a},{b}"))
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(out, "{line}");
    }
    out
}

fn render_rectangle(grid: &blocks::LatinRectangle) -> String {
    let mut out = String::new();
    for row in grid.entries() {
        let line = row
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(out, "{line}");
    }
    out
}

fn render_array(array: &HowellArray) -> String {
    let mut out = String::new();
    for row in array.grid() {
        let line = row
            .iter()
            .map(|cell| match cell {
                None => ".".to_string(),
                Some((a, b)) => format!("{a},{b}"),
            })
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(out, "{line}");
    }
    out
}

fn render_colouring(colouring: &ColouredTriplePacking) -> String {
    let mut out = String::new();
    for class in colouring.classes() {
        let line = class
            .iter()
            .map(|t| format!("{},{},{}", t[0], t[1], t[2]))
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(out, "{line}");
    }
    out
}

// ---------------------------------------------------------------------------
// catalogue
// ---------------------------------------------------------------------------

fn cmd_catalogue(action: CatalogueAction, machine: bool) -> CliResult {
    match action {
        CatalogueAction::List => {
            for fixture in catalogue::all() {
                let inst = fixture.instance();
                if machine {
                    let mut pairs = vec![
                        ("id", fixture.id().to_string()),
                        ("v", join(inst.v())),
                        ("k", join(inst.k())),
                        ("size", fixture.expected_size().to_string()),
                        ("provenance", fixture.provenance().as_str().to_string()),
                    ];
                    if let Some(ct) = fixture.expected_colour_type() {
                        pairs.push(("colour_type", ct.replace(' ', "_")));
                    }
                    outln!("{}", record(&pairs));
                } else {
                    let colour = fixture
                        .expected_colour_type()
                        .map(|ct| format!("  colour type {ct}"))
                        .unwrap_or_default();
                    outln!(
                        "{:<12} v={:<10} k={:<8} size {:<3} {}{}",
                        fixture.id(),
                        join(inst.v()),
                        join(inst.k()),
                        fixture.expected_size(),
                        fixture.provenance().as_str(),
                        colour
                    );
                }
            }
            Ok(0)
        }
        CatalogueAction::Show { id } => {
            let fixture = catalogue::lookup(&id)
                .ok_or_else(|| Failure::data(format!("no fixture named '{id}'")))?;
            if machine {
                outln!(
                    "{}",
                    record(&[
                        ("id", fixture.id().to_string()),
                        ("size", fixture.expected_size().to_string()),
                        ("provenance", fixture.provenance().as_str().to_string()),
                    ])
                );
            } else {
                out!(
                    "{}",
                    table(&[
                        ("id", fixture.id().to_string()),
                        ("instance", instance_line(fixture.instance())),
                        ("size", fixture.expected_size().to_string()),
                        ("provenance", fixture.provenance().as_str().to_string()),
                    ])
                );
                outln!("");
            }
            out!("{}", fixture.payload());
            Ok(0)
        }
        CatalogueAction::Check => {
            let report = catalogue::verify_all();
            for entry in &report.entries {
                if machine {
                    outln!(
                        "{}",
                        record(&[
                            ("id", entry.id.to_string()),
                            ("pass", entry.pass.to_string()),
                        ])
                    );
                } else if entry.pass {
                    outln!("{:<12} pass", entry.id);
                } else {
                    outln!("{:<12} FAIL  {}", entry.id, entry.detail);
                }
            }
            if report.all_pass() {
                Ok(0)
            } else {
                Err(Failure::internal(format!(
                    "{} fixture(s) failed self-verification",
                    report.failures().len()
                )))
            }
        }
    }
}
