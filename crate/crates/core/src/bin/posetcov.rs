use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use posetcov::backend::{BackendFactory, BatsatBackend, ExternalBackend, SolverBackend};
use posetcov::bench::{run_bench, to_csv, BenchSpec};
use posetcov::driver::{
    cover_languages, encode_whole, single_poset_cover, solve_with, Method, SolveOptions,
};
use posetcov::encoding::{emit_dimacs, DEFAULT_NAIVE_CAP};
use posetcov::instance::{parse_instance, write_instance};
use posetcov::poset::DEFAULT_EXTENSION_CAP;
use posetcov::report::{hasse_dot, Report};
use posetcov::swap_graph::SwapGraph;
use posetcov::testkit::{gen_instance, gen_poset_language, GenSpec};
use posetcov::{Error, OrderSet};

#[derive(Parser)]
#[command(
    name = "posetcov",
    version,
    about = "Minimum poset covers of linear-order sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a minimum cover of the orders in FILE.
    Solve(SolveArgs),
    /// Report the poset whose language is exactly the input, if any.
    CheckSingle { input: PathBuf },
    /// Generate a random instance.
    Gen(GenArgs),
    /// Write a DOT graph for an instance.
    Export(ExportArgs),
    /// Run a timeout grid over generated instances and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Moat,
    Naive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SolverFlags {
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Solve the whole input at once instead of per swap-graph component.
    #[arg(long)]
    no_divide: bool,
    #[arg(long, value_name = "N")]
    max_k: Option<usize>,
    /// Per-query timeout in seconds.
    #[arg(long, value_name = "SECS", default_value_t = 900.0)]
    timeout: f64,
    #[arg(long)]
    no_verify: bool,
    #[arg(long, value_name = "N", env = "POSETCOV_NAIVE_CAP", default_value_t = DEFAULT_NAIVE_CAP)]
    naive_cap: u64,
    /// Worker threads for independent components.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// External SAT solver reading DIMACS on stdin (competition output).
    #[arg(long, value_name = "PROGRAM")]
    solver: Option<PathBuf>,
    /// Extra argument for the external solver; repeatable.
    #[arg(long = "solver-arg", value_name = "ARG", requires = "solver")]
    solver_args: Vec<String>,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[command(flatten)]
    solver: SolverFlags,
    /// Print each poset's language.
    #[arg(long)]
    languages: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the DIMACS formula for a cover of size --k instead of solving.
    #[arg(long, value_name = "PATH", conflicts_with = "format")]
    emit_cnf: Option<PathBuf>,
    /// Cover size encoded by --emit-cnf.
    #[arg(long, default_value_t = 1, requires = "emit_cnf")]
    k: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "from_poset")]
    m: Option<usize>,
    /// Grow the set through swap neighbors so it forms one component.
    #[arg(long)]
    connected: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for --from-poset.
    #[arg(long)]
    density: Option<f64>,
    /// Emit the full language of a random poset.
    #[arg(long)]
    from_poset: bool,
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["swap_graph", "hasse"]))]
struct ExportArgs {
    /// Swap graph of the input orders.
    #[arg(long)]
    swap_graph: bool,
    /// Hasse diagrams of a minimum cover.
    #[arg(long)]
    hasse: bool,
    input: PathBuf,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Universe sizes, e.g. `3..6` (inclusive).
    #[arg(long, value_parser = parse_range, default_value = "3..5")]
    n_range: RangeInclusive<usize>,
    /// Instance sizes, e.g. `1..100` (inclusive).
    #[arg(long, value_parser = parse_range, default_value = "1..20")]
    m_range: RangeInclusive<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Per-trial budget in seconds.
    #[arg(long, value_name = "SECS", default_value_t = 900.0)]
    timeout: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw unconstrained sets instead of single-component ones.
    #[arg(long)]
    unconnected: bool,
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bound = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (bound(a)?, bound(b.trim_start_matches('='))?),
        None => {
            let v = bound(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = e.exit_code();
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_instance(path: &Path) -> CliResult<OrderSet> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse_instance(&text)?)
}

fn options(flags: &SolverFlags) -> CliResult<SolveOptions> {
    if !(flags.timeout.is_finite() && flags.timeout > 0.0) {
        return Err(usage("--timeout must be a positive number of seconds"));
    }
    if flags.max_k == Some(0) {
        return Err(usage("--max-k must be at least 1"));
    }
    if flags.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    Ok(SolveOptions {
        method: match flags.method {
            MethodArg::Auto => Method::Auto,
            MethodArg::Moat => Method::Moat,
            MethodArg::Naive => Method::Naive,
        },
        divide: !flags.no_divide,
        max_k: flags.max_k,
        timeout_per_query: Some(Duration::from_secs_f64(flags.timeout)),
        global_timeout: None,
        verify: !flags.no_verify,
        naive_cap: flags.naive_cap,
        extension_cap: DEFAULT_EXTENSION_CAP,
        jobs: flags.jobs,
    })
}

struct External(ExternalBackend);

impl BackendFactory for External {
    fn create(&self) -> Box<dyn SolverBackend> {
        Box::new(self.0.clone())
    }
}

fn factory(flags: &SolverFlags) -> Box<dyn BackendFactory> {
    match &flags.solver {
        Some(p) => Box::new(External(ExternalBackend::new(p, flags.solver_args.clone()))),
        None => Box::new(BatsatBackend::factory()),
    }
}

fn emit(text: &str, path: Option<&Path>) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", p.display()),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| usage(e.to_string()))
        }
    }
}

fn cmd_solve(args: &SolveArgs) -> CliResult {
    let opts = options(&args.solver)?;
    if args.k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    let orders = read_instance(&args.input)?;
    if let Some(path) = &args.emit_cnf {
        let (cnf, strategy) = encode_whole(&orders, args.k, &opts)?;
        emit(&emit_dimacs(&cnf, Some(orders.universe())), Some(path))?;
        eprintln!(
            "wrote {} variables, {} clauses ({} exclusion) to {}",
            cnf.num_vars(),
            cnf.len(),
            strategy.name(),
            path.display()
        );
        return Ok(());
    }
    let cover = solve_with(&orders, &opts, factory(&args.solver).as_ref())?;
    let languages = match (&cover.languages, args.languages) {
        (_, false) => None,
        (Some(l), true) => Some(l.clone()),
        (None, true) => cover_languages(&cover.posets, &orders, DEFAULT_EXTENSION_CAP)?
            .ok_or_else(|| Failure::from(Error::VerificationFailed))
            .map(Some)?,
    };
    let report = Report::new(&cover, languages.as_deref());
    match args.format {
        Format::Text => emit(&report.to_text(), None),
        Format::Json => emit(&(report.to_json() + "\n"), None),
    }
}

fn cmd_check_single(input: &Path) -> CliResult {
    let orders = read_instance(input)?;
    let text = match single_poset_cover(&orders) {
        Some(p) => {
            let edges: Vec<String> = p
                .hasse_labels()
                .into_iter()
                .map(|(x, y)| format!("{x}<{y}"))
                .collect();
            format!(
                "single poset: {}\n",
                if edges.is_empty() {
                    "(antichain)".into()
                } else {
                    edges.join(" ")
                }
            )
        }
        None => "not a single poset language\n".to_owned(),
    };
    emit(&text, None)
}

fn cmd_gen(args: &GenArgs) -> CliResult {
    if args.n == 0 {
        return Err(Failure::from(Error::InvalidUniverse(
            "--n must be at least 1".into(),
        )));
    }
    let (orders, header) = if args.from_poset {
        let density = args.density.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&density) {
            return Err(usage("--density must lie in [0, 1]"));
        }
        let orders = gen_poset_language(args.n, density, args.seed, DEFAULT_EXTENSION_CAP)?;
        let header = format!(
            "posetcov gen n={} from-poset density={density} seed={}",
            args.n, args.seed
        );
        (orders, header)
    } else {
        let spec = GenSpec {
            n: args.n,
            m: args.m.expect("required unless --from-poset"),
            connected: args.connected,
            seed: args.seed,
            density: args.density,
        };
        (gen_instance(&spec)?, spec.header())
    };
    emit(&write_instance(&orders, &[header]), args.output.as_deref())
}

fn cmd_export(args: &ExportArgs) -> CliResult {
    let opts = options(&args.solver)?;
    let orders = read_instance(&args.input)?;
    let dot = if args.swap_graph {
        SwapGraph::build(&orders).to_dot()
    } else {
        let cover = solve_with(&orders, &opts, factory(&args.solver).as_ref())?;
        hasse_dot(&cover.posets)
    };
    emit(&dot, None)
}

fn cmd_bench(args: &BenchArgs) -> CliResult {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if !(args.timeout.is_finite() && args.timeout > 0.0) {
        return Err(usage("--timeout must be a positive number of seconds"));
    }
    let spec = BenchSpec {
        n_range: args.n_range.clone(),
        m_range: args.m_range.clone(),
        trials: args.trials,
        timeout: Duration::from_secs_f64(args.timeout),
        seed: args.seed,
        connected: !args.unconnected,
        jobs: args.jobs,
    };
    emit(&to_csv(&run_bench(&spec)?), None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::CheckSingle { input } => cmd_check_single(input),
        Command::Gen(a) => cmd_gen(a),
        Command::Export(a) => cmd_export(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("posetcov: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
