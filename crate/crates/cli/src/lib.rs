//! Batch verification driver for the p-DG zigzag engine.

pub mod cache;
pub mod checks;
pub mod encode;
pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use pdg_core::arith::{cyc_identity, cyc_matmul, is_prime, CycMatrix};
use pdg_core::functors::Functor;
use pdg_core::ktheory::{change_basis, decat_word, dual_basis};
use pdg_core::quantum::{burau_word, parse_braid_word, Sign};
use pdg_core::zigzag::ZigzagAlgebra;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use cache::{Cache, CacheStats};
pub use checks::Suite;
pub use report::{CheckRecord, Report, Status, Summary};

/// Environment variable overriding the job count.
pub const JOBS_ENV: &str = "PDG_VERIFY_JOBS";
pub const DEFAULT_BUDGET: usize = 60000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    K0,
    Quantum,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub n: u32,
    pub p: u32,
    pub lambda: u32,
    pub suite: Suite,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub budget: usize,
}

impl Config {
    pub fn new(suite: Suite, n: u32, p: u32, lambda: u32) -> Config {
        Config { n, p, lambda, suite, jobs: None, cache_dir: None, budget: DEFAULT_BUDGET }
    }
}

pub fn algebra(n: u32, p: u32, lambda: u32) -> Result<ZigzagAlgebra, UsageError> {
    if !is_prime(p) {
        return Err(UsageError(format!("p = {p} is not prime")));
    }
    if lambda >= p {
        return Err(UsageError(format!("lambda = {lambda} is not in F_{p}; use 0..{p}")));
    }
    ZigzagAlgebra::new(n, p, lambda).map_err(|e| UsageError(e.to_string()))
}

fn params(n: u32, p: u32, lambda: u32) -> BTreeMap<String, Value> {
    [("n", json!(n)), ("p", json!(p)), ("lambda", json!(lambda))].into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// FNV-1a of the check id, so each check draws from its own reproducible stream.
fn seed_for(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

pub fn job_count(flag: Option<usize>) -> usize {
    let env = std::env::var(JOBS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&j| j > 0);
    env.or(flag).unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub fn run_suite(cfg: &Config) -> Result<(Report, CacheStats), UsageError> {
    let alg = algebra(cfg.n, cfg.p, cfg.lambda)?;
    let cache = Cache::new(cfg.cache_dir.clone());
    let ctx = checks::Ctx { alg: &alg, cache: &cache, budget: cfg.budget };
    let catalog = checks::catalog(cfg.suite, &alg);
    let base = params(cfg.n, cfg.p, cfg.lambda);
    let run_one = |c: &checks::Check| -> CheckRecord {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&c.id));
        let outcome = match catch_unwind(AssertUnwindSafe(|| (c.run)(&ctx, &mut rng))) {
            Ok(Ok(o)) => o,
            Ok(Err(e)) => checks::Outcome { status: Status::Fail, witness: json!({ "error": e }) },
            Err(e) => checks::Outcome { status: Status::Fail, witness: json!({ "panic": panic_message(e.as_ref()) }) },
        };
        let mut params = base.clone();
        params.extend(c.params.clone());
        CheckRecord {
            id: c.id.clone(),
            params,
            status: outcome.status,
            witness: outcome.witness,
            millis: start.elapsed().as_millis() as u64,
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job_count(cfg.jobs))
        .build()
        .map_err(|e| UsageError(e.to_string()))?;
    let records: Vec<CheckRecord> = pool.install(|| catalog.par_iter().map(run_one).collect());
    Ok((Report::new(cfg.suite.name(), base, records), cache.stats()))
}

/// Product of the generators of a braid word, as a matrix over 𝕆_p.
///
/// `K0` uses the classes of the braiding functors rewritten in the basis of simples, `Quantum` the Burau
/// matrices on the weight space; the two agree.
pub fn eval_braid_word(word: &str, n: u32, p: u32, lambda: u32, level: Level) -> Result<Value, UsageError> {
    let alg = algebra(n, p, lambda)?;
    let letters = parse_braid_word(word, n).map_err(UsageError)?;
    let m: CycMatrix = match level {
        Level::Quantum => burau_word(&letters, n, p),
        Level::K0 => {
            let word: Vec<Functor> = letters
                .iter()
                .map(|&(i, s)| match s {
                    Sign::Positive => Functor::T(i),
                    Sign::Inverse => Functor::TPrime(i),
                })
                .collect();
            let proj = word
                .iter()
                .try_fold(cyc_identity(p, n as usize), |acc, f| {
                    decat_word(&alg, std::slice::from_ref(f)).map(|x| cyc_matmul(&acc, &x, p))
                })
                .map_err(|e| UsageError(e.to_string()))?;
            let simples = dual_basis(&alg).ok_or_else(|| UsageError("Gram matrix is not invertible".into()))?;
            change_basis(&proj, &simples, p).expect("invertible")
        }
    };
    let level_name = match level {
        Level::K0 => "k0",
        Level::Quantum => "quantum",
    };
    Ok(json!({
        "word": word,
        "level": level_name,
        "params": params(n, p, lambda),
        "matrix": encode::matrix(&m),
        "at_root": encode::matrix_at_root(&m),
        "identity": m == cyc_identity(p, n as usize),
    }))
}
