//! Resolution cache: in memory for one run, optionally persisted as JSON cell diagrams.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use pdg_core::pdgmod::{ModError, Side};
use pdg_core::resolve::{ny_resolution, NYResolution};
use pdg_core::zigzag::ZigzagAlgebra;

use crate::encode;

pub struct Cache {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<(Side, u32), Arc<NYResolution>>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    discarded: AtomicUsize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub discarded: usize,
}

fn key_name(alg: &ZigzagAlgebra, side: Side, i: u32) -> String {
    format!("ny-{}-{}-{}-{}-{}.json", alg.n, alg.p, alg.lambda, encode::side_name(side), i)
}

/// Compiles a stored diagram and re-checks it cheaply: ∂^p = 0 on compile, then the first slash homology.
fn revive(alg: &ZigzagAlgebra, side: Side, i: u32, path: &Path) -> Option<NYResolution> {
    let text = fs::read_to_string(path).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    let d = encode::parse_diagram(&v, alg)?;
    if d.side != side || d.is_empty() {
        return None;
    }
    let r = NYResolution::from_diagram(alg, i, side, d).ok()?;
    let h = r.module.underlying().complex.slash_homology(1);
    let nonzero: Vec<(i64, usize)> = h.into_iter().filter(|x| x.1 > 0).collect();
    (nonzero == vec![(0, 1)]).then_some(r)
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache {
            dir,
            memo: Mutex::new(HashMap::new()),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            discarded: AtomicUsize::new(0),
        }
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            discarded: self.discarded.load(Ordering::Relaxed),
        }
    }

    pub fn ny(&self, alg: &ZigzagAlgebra, side: Side, i: u32) -> Result<Arc<NYResolution>, ModError> {
        if let Some(r) = self.memo.lock().unwrap().get(&(side, i)) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.load_or_build(alg, side, i)?);
        self.memo.lock().unwrap().insert((side, i), r.clone());
        Ok(r)
    }

    fn load_or_build(&self, alg: &ZigzagAlgebra, side: Side, i: u32) -> Result<NYResolution, ModError> {
        let Some(dir) = &self.dir else {
            return ny_resolution(alg, i, side);
        };
        let path = dir.join(key_name(alg, side, i));
        if path.exists() {
            if let Some(r) = revive(alg, side, i, &path) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Ok(r);
            }
            self.discarded.fetch_add(1, Ordering::Relaxed);
            let _ = fs::remove_file(&path);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let r = ny_resolution(alg, i, side)?;
        let text = serde_json::to_string_pretty(&encode::diagram(&r.diagram, alg)).expect("serializable");
        let tmp = path.with_extension(format!("tmp{:?}", std::thread::current().id()).replace(['(', ')'], ""));
        if fs::create_dir_all(dir).is_ok() && fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
        Ok(r)
    }
}
