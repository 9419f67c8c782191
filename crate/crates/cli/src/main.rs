use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qlzero::kernel::{kernel_cached, Family};
use qlzero::report::Status;
use qlzero::run::{self, Exit, PChoice, RunConfig, Suite, SuiteConfig};
use qlzero::window::Window;
use qlzero::Error;

const CACHE_ENV: &str = "QLZERO_CACHE";

#[derive(Parser)]
#[command(name = "qlzero", version, about = "Exact checks of the level-0 action on level-one spinon modules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write one JSON record per check.
    Check(CheckArgs),
    /// Build a kernel basis and store it in the cache.
    Kernel(KernelArgs),
    /// Print the graded character table next to the level-one oracle.
    Chars(CharsArgs),
    /// Print the matrix of an operator on the symbols of a window.
    Dump(DumpArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// TOML file with the same fields as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run; repeat for several.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Mode window `LO..HI`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// q3, q4, q5 or generic-sample.
    #[arg(long)]
    p: Option<String>,
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    fast_prescreen: bool,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "-3..0")]
    window: String,
    /// Comma separated subset of hec, fus, hwt.
    #[arg(long, default_value = "hec,fus,hwt")]
    families: String,
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct CharsArgs {
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// Largest spinon number; by default every sector that reaches the degree.
    #[arg(long)]
    nmax: Option<usize>,
    /// Ranks over Q(q) instead of at a point mod p.
    #[arg(long)]
    exact: bool,
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    /// s<j>, g<j>, y<j>, e0, f0 or t0.
    #[arg(long)]
    op: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "-1..0")]
    window: String,
    #[arg(long, default_value = "q4")]
    p: String,
}

fn config_from(args: &CheckArgs) -> Result<RunConfig, Error> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str::<RunConfig>(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    let window: Option<Window> = args.window.as_deref().map(str::parse).transpose()?;
    if !args.suites.is_empty() {
        cfg.suites = args
            .suites
            .iter()
            .map(|s| Ok(SuiteConfig { n: args.n, window, ..SuiteConfig::new(s.parse::<Suite>()?) }))
            .collect::<Result<_, Error>>()?;
    } else {
        for s in &mut cfg.suites {
            s.n = args.n.or(s.n);
            s.window = window.or(s.window);
        }
    }
    if let Some(p) = &args.p {
        cfg.p = p.parse::<PChoice>()?;
    }
    if args.cache.is_some() {
        cfg.cache = args.cache.clone();
    }
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
    cfg.fast_prescreen |= args.fast_prescreen;
    Ok(cfg)
}

fn check(args: CheckArgs) -> Result<Exit, Error> {
    let cfg = match config_from(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::ConfigError);
        }
    };
    let outcome = run::run(&cfg);
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    run::write_jsonl(&outcome.report, &mut sink)?;
    sink.flush()?;
    for r in &outcome.report.records {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        eprintln!("{tag} {} ({} tested, residual {}, {} ms)", r.id, r.tested, r.residual, r.wall_ms);
    }
    Ok(outcome.exit)
}

fn kernel(args: KernelArgs) -> Result<Exit, Error> {
    let window: Window = args.window.parse()?;
    let families = args.families.split(',').map(|f| f.trim().parse::<Family>()).collect::<Result<Vec<_>, _>>()?;
    let kb = kernel_cached(args.cache.as_deref(), args.n, window, &families)?;
    println!("slots {} window {} families {:?}", kb.n, kb.window, kb.families);
    println!("ambient {} generators {} rank {} quotient {}", kb.ambient.dim(), kb.generators(), kb.rank(), kb.ambient.dim() - kb.rank());
    if let Some(c) = &args.cache {
        println!("cached under {}", c.display());
    }
    Ok(Exit::Pass)
}

fn chars(args: CharsArgs) -> Result<Exit, Error> {
    let cells = run::character_table(args.cache.as_deref(), args.degree, args.nmax, args.exact)?;
    println!("{:>6} {:>6} {:>6} {:>6} {:>6}  admissible per sector", "module", "degree", "weight", "count", "oracle");
    for c in &cells {
        let adm: Vec<String> = c.admissible.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        let flag = if !c.matches() {
            "  MISMATCH"
        } else if c.truncated {
            "  truncated"
        } else {
            ""
        };
        println!("{:>6} {:>6} {:>6} {:>6} {:>6}  {}{flag}", c.module, c.degree, c.weight, c.count, c.oracle, adm.join(" "));
    }
    let ok = cells.iter().all(|c| c.matches() && !c.truncated);
    Ok(if ok { Exit::Pass } else { Exit::CheckFailure })
}

fn dump(args: DumpArgs) -> Result<Exit, Error> {
    let window: Window = args.window.parse()?;
    let p = args.p.parse::<PChoice>()?.values().remove(0).1;
    let entries = run::operator_matrix(&args.op, args.n, window, &p)?;
    let mut out = io::stdout().lock();
    for (from, to, c) in entries {
        writeln!(out, "{from} -> {to} : {c}")?;
    }
    Ok(Exit::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Check(a) => check(a),
        Cmd::Kernel(a) => kernel(a),
        Cmd::Chars(a) => chars(a),
        Cmd::Dump(a) => dump(a),
    };
    match res {
        Ok(e) => ExitCode::from(e as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Exit::of_error(&e) as u8)
        }
    }
}
