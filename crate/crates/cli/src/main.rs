use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zetaqva::cartan::CartanData;
use zetaqva::{emit_report, run_suite, Error, Format, RunConfig, Suite};

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

/// Exact verification suites for root-of-unity quantum vertex algebra data.
#[derive(Parser, Debug)]
#[command(name = "zetaqva", version)]
struct Args {
    /// Cartan type and rank, e.g. A1, B2, G2.
    #[arg(long)]
    cartan: String,
    /// Order of the root of unity; must exceed 2r.
    #[arg(long)]
    p: u32,
    /// Level, read modulo p.
    #[arg(long, allow_hyphen_values = true)]
    level: i64,
    /// Series truncation order.
    #[arg(long, default_value_t = 12)]
    trunc: i64,
    /// Coefficient window for formal distributions.
    #[arg(long, default_value_t = 16)]
    window: i64,
    /// Comma-separated suites (qcomb, tau, qyb, dft, quiver, symcomb, dist) or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest size for the combinatorial sweeps.
    #[arg(long, default_value_t = 4)]
    max_k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Record per-check wall-clock milliseconds (reports then differ between runs).
    #[arg(long)]
    timings: bool,
}

fn config(args: &Args) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::new(CartanData::parse(&args.cartan)?, args.p, args.level);
    cfg.trunc = args.trunc;
    cfg.window = args.window;
    cfg.suites = Suite::parse_list(&args.suite)?;
    cfg.max_k = args.max_k;
    cfg.seed = args.seed;
    cfg.out = args.out.clone();
    cfg.format = args.format.parse::<Format>()?;
    cfg.jobs = args.jobs;
    cfg.timings = args.timings;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let report = match config(&args).and_then(|cfg| run_suite(&cfg).map(|r| (cfg, r))) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("zetaqva: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let (cfg, report) = report;
    if let Err(e) = emit_report(&report, cfg.format, cfg.out.as_deref()) {
        let target = cfg.out.as_ref().map_or("standard output".into(), |p| p.display().to_string());
        eprintln!("zetaqva: cannot write report to {target}: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(report.exit_code())
}
