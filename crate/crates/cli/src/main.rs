use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use entgap::distributions::DeviationLattice;
use entgap::energetics::beta_from_chi;
use entgap::entanglement::{
    concurrence, correlation_energy_from_concurrence, effective_temperature, purity,
    uncertainties, von_neumann_entropy, InversionMode,
};
use entgap::figures::{figure_table, Cell, FigureId, FigureTable, SweepConfig, SweepParameter};
use entgap::model::{
    correlation_energy, energy_level, hf_energy, hf_overlap, params_from_correlation_energy,
};
use entgap::verify::{verify, Profile};
use entgap::CouplingParams;

const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CHECKS_FAILED: u8 = 3;

const QUANTITIES: [&str; 11] = [
    "E00", "EHF", "Ecorr", "overlap", "entropy", "purity", "concurrence", "dq2", "dp2", "Tstar",
    "beta",
];

#[derive(Parser)]
#[command(name = "entgap", version, about = "Moshinsky-model entanglement and energy statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate quantities at one model point and print them as JSON.
    Eval(EvalArgs),
    /// Emit the data behind one figure as CSV or JSON.
    Figure(FigureArgs),
    /// Run every closed-form versus oracle check.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "point")]
struct PointArgs {
    #[arg(long = "K")]
    k: Option<f64>,
    #[arg(long)]
    chi: Option<f64>,
    #[arg(long)]
    ecorr: Option<f64>,
    #[arg(long)]
    concurrence: Option<f64>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Comma-separated subset of E00,EHF,Ecorr,overlap,entropy,purity,concurrence,dq2,dp2,Tstar,beta.
    #[arg(long, value_delimiter = ',')]
    quantities: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    #[value(name = "K")]
    K,
    Chi,
    #[value(name = "Ecorr")]
    Ecorr,
    Concurrence,
}

impl From<Param> for SweepParameter {
    fn from(p: Param) -> Self {
        match p {
            Param::K => SweepParameter::K,
            Param::Chi => SweepParameter::Chi,
            Param::Ecorr => SweepParameter::Ecorr,
            Param::Concurrence => SweepParameter::Concurrence,
        }
    }
}

#[derive(Args)]
struct FigureArgs {
    /// One of 1, 2, distributions, cum2, diff, conc-compare.
    id: String,
    #[arg(long, value_enum)]
    param: Option<Param>,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    cutoff_ratio: Option<f64>,
    #[arg(long)]
    cumulant_order: Option<usize>,
    #[arg(long)]
    truncation_tol: Option<f64>,
    /// Smallest Δq and Δp of the distribution lattice.
    #[arg(long)]
    lattice_lo: Option<f64>,
    #[arg(long)]
    lattice_hi: Option<f64>,
    #[arg(long)]
    lattice_step: Option<f64>,
    /// Number of level probabilities per distribution point.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Default,
    Strict,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "default")]
    profile: ProfileArg,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Io(String),
    Checks(Vec<String>),
}

impl From<entgap::Error> for Failure {
    fn from(e: entgap::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        return report(f);
    }
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Figure(args) => cmd_figure(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    match f {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Failure::Io(msg) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Failure::Checks(names) => {
            eprintln!("failed checks: {}", names.join(", "));
            ExitCode::from(EXIT_CHECKS_FAILED)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("ENTGAP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("ENTGAP_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn resolve_point(point: &PointArgs) -> Result<CouplingParams, Failure> {
    let p = match (point.k, point.chi, point.ecorr, point.concurrence) {
        (Some(k), ..) => CouplingParams::from_k(k)?,
        (_, Some(chi), ..) => CouplingParams::from_chi(chi)?,
        (_, _, Some(e), _) => params_from_correlation_energy(e)?,
        (_, _, _, Some(c)) => params_from_correlation_energy(correlation_energy_from_concurrence(
            c,
            InversionMode::ExactRoot,
        )?)?,
        _ => return Err(Failure::Usage("no model point given".into())),
    };
    Ok(p)
}

fn quantity(p: &CouplingParams, name: &str) -> Option<f64> {
    let u = uncertainties(p);
    match name {
        "E00" => Some(energy_level(p, 0, 0)),
        "EHF" => Some(hf_energy(p)),
        "Ecorr" => Some(correlation_energy(p)),
        "overlap" => Some(hf_overlap(p)),
        "entropy" => Some(von_neumann_entropy(p)),
        "purity" => Some(purity(p)),
        "concurrence" => Some(concurrence(p)),
        "dq2" => Some(u.dq2),
        "dp2" => Some(u.dp2),
        "Tstar" => effective_temperature(p).ok(),
        "beta" => beta_from_chi(p.chi()).ok(),
        _ => unreachable!("names are validated before evaluation"),
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let names: Vec<String> = match &args.quantities {
        Some(q) => q.iter().map(|s| s.trim().to_string()).collect(),
        None => QUANTITIES.iter().map(|s| s.to_string()).collect(),
    };
    if let Some(bad) = names.iter().find(|n| !QUANTITIES.contains(&n.as_str())) {
        return Err(Failure::Usage(format!(
            "unknown quantity '{bad}'; expected one of {}",
            QUANTITIES.join(",")
        )));
    }
    let p = resolve_point(&args.point)?;
    let mut record = Map::new();
    for n in &names {
        let v = quantity(&p, n).map_or(Value::Null, |x| json!(x));
        record.insert(n.clone(), v);
    }
    println!("{}", Value::Object(record));
    Ok(())
}

fn sweep_config(args: &FigureArgs, id: FigureId) -> SweepConfig {
    let mut cfg = SweepConfig::for_figure(id);
    if let Some(param) = args.param {
        cfg.parameter = param.into();
        (cfg.lo, cfg.hi) = cfg.parameter.default_range();
    }
    cfg.lo = args.lo.unwrap_or(cfg.lo);
    cfg.hi = args.hi.unwrap_or(cfg.hi);
    cfg.points = args.points.unwrap_or(cfg.points);
    cfg.cutoff_ratio = args.cutoff_ratio.unwrap_or(cfg.cutoff_ratio);
    cfg.cumulant_order = args.cumulant_order.unwrap_or(cfg.cumulant_order);
    cfg.truncation_tol = args.truncation_tol.unwrap_or(cfg.truncation_tol);
    cfg.levels = args.levels.unwrap_or(cfg.levels);
    let d = DeviationLattice::default();
    cfg.lattice = DeviationLattice {
        lo: args.lattice_lo.unwrap_or(d.lo),
        hi: args.lattice_hi.unwrap_or(d.hi),
        step: args.lattice_step.unwrap_or(d.step),
    };
    cfg
}

fn cmd_figure(args: &FigureArgs) -> Result<(), Failure> {
    let id: FigureId = args.id.parse()?;
    let cfg = sweep_config(args, id);
    let table = figure_table(id, &cfg)?;
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => write_csv(&table, &mut buf)?,
        Format::Json => write_json(&table, &mut buf)?,
    }
    match &args.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            out.write_all(&buf)?;
            out.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&buf)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn meta(table: &FigureTable) -> Value {
    json!({
        "tool": "entgap",
        "version": VERSION,
        "figure": table.figure.name(),
        "config": table.config,
    })
}

fn write_csv(table: &FigureTable, out: &mut Vec<u8>) -> Result<(), Failure> {
    writeln!(out, "# entgap {VERSION}")?;
    writeln!(out, "# figure: {}", table.figure.name())?;
    writeln!(out, "# config: {}", json!(table.config))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(csv_field))?;
    }
    w.flush()?;
    Ok(())
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) if v.is_finite() => format_number(*v),
        Cell::Num(_) | Cell::Empty => String::new(),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.to_string(),
    }
}

// Shortest round-trip text, switching to exponent form outside [1e-5, 1e16).
fn format_number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn write_json(table: &FigureTable, out: &mut Vec<u8>) -> Result<(), Failure> {
    let doc = json!({
        "meta": meta(table),
        "columns": table.columns,
        "rows": table.rows,
    });
    serde_json::to_writer(&mut *out, &doc).map_err(|e| Failure::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let profile = match args.profile {
        ProfileArg::Default => Profile::Default,
        ProfileArg::Strict => Profile::Strict,
    };
    let report = verify(profile);
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Failure::Io(e.to_string()))?;
        writeln!(out)?;
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(out, "{status}  {:<50} error {:.3e}  tol {:.1e}", c.name, c.error, c.tolerance)?;
            if let Some(msg) = &c.failure {
                write!(out, "  ({msg})")?;
            }
            writeln!(out)?;
        }
    }
    out.flush()?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks(
            report.failures().iter().map(|c| c.name.to_string()).collect(),
        ))
    }
}
