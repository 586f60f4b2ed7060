use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pdg_verify::{eval_braid_word, run_suite, Config, Level, Suite, UsageError, DEFAULT_BUDGET};

/// Verify the p-DG zigzag algebra constructions and their decategorification.
#[derive(Parser, Debug)]
#[command(name = "pdg-verify", version)]
struct Args {
    /// Number of vertices.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Characteristic, a prime.
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// Differential parameter, in 0..p.
    #[arg(long, default_value_t = 1)]
    lambda: u32,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Worker threads; PDG_VERIFY_JOBS takes precedence.
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for cached resolutions.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Evaluate a braid word such as "s1 S2 s1" instead of running a suite.
    #[arg(long)]
    word: Option<String>,
    #[arg(long, value_enum, default_value_t = Level::K0)]
    level: Level,
    /// Largest Hom complex dimension a certificate search may build.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

fn usage(e: UsageError) -> ExitCode {
    eprintln!("error: {e}");
    eprintln!("usage: pdg-verify [--n N] [--p PRIME] [--lambda L] [--suite NAME] [--word WORD --level k0|quantum]");
    ExitCode::from(2)
}

fn write_json(path: &Option<PathBuf>, v: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(word) = &args.word {
        return match eval_braid_word(word, args.n, args.p, args.lambda, args.level) {
            Ok(v) => {
                if let Err(e) = write_json(&args.json, &v) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        };
    }
    let cfg = Config {
        n: args.n,
        p: args.p,
        lambda: args.lambda,
        suite: args.suite,
        jobs: args.jobs,
        cache_dir: args.cache_dir.clone(),
        budget: args.budget,
    };
    let (report, stats) = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if cfg.cache_dir.is_some() {
        eprintln!("cache: {} hits, {} misses, {} discarded", stats.hits, stats.misses, stats.discarded);
    }
    print!("{}", report.to_text());
    if let Err(e) = write_json(&args.json, &report) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
