use std::path::Path;
use std::process::{Command, Output};

use pdg_core::pdgmod::Side;
use pdg_core::resolve::ny_resolution;
use pdg_core::zigzag::ZigzagAlgebra;
use pdg_verify::encode::{diagram, parse_diagram};
use pdg_verify::{eval_braid_word, run_suite, Config, Level, Report, Status, Suite};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdg-verify")).args(args).env_remove("PDG_VERIFY_JOBS").output().unwrap()
}

fn cfg(suite: Suite, n: u32, p: u32, lambda: u32) -> Config {
    let mut c = Config::new(suite, n, p, lambda);
    c.jobs = Some(2);
    c
}

#[test]
fn small_all_suite_passes() {
    let (r, _) = run_suite(&cfg(Suite::All, 2, 3, 1)).unwrap();
    let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| (&c.id, &c.witness)).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(r.summary.pass + r.summary.skipped, r.checks.len());
    assert!(r.summary.pass > 30);
}

#[test]
fn algebra_suite_at_lambda_zero() {
    let (r, _) = run_suite(&cfg(Suite::Algebra, 3, 2, 0)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.summary.skipped, 0);
}

#[test]
fn right_ln_resolution_fails_beyond_two_vertices() {
    let (r, _) = run_suite(&cfg(Suite::Resolutions, 3, 3, 0)).unwrap();
    let failing: Vec<&str> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
    assert_eq!(failing, vec!["resolutions.ln.right"]);
    let (r2, _) = run_suite(&cfg(Suite::Resolutions, 2, 3, 0)).unwrap();
    assert!(r2.all_pass());
}

#[test]
fn budget_skips_r3_but_keeps_k0() {
    let mut c = cfg(Suite::Braid, 3, 3, 1);
    c.budget = 0;
    let (r, _) = run_suite(&c).unwrap();
    for rec in &r.checks {
        if rec.id.starts_with("braid.r") {
            assert_eq!(rec.status, Status::Skipped, "{}", rec.id);
            assert!(rec.witness["size"].as_u64().unwrap() > 0);
        } else {
            assert_eq!(rec.status, Status::Pass, "{}", rec.id);
        }
    }
    assert!(r.all_pass());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["--p", "4"],
        vec!["--p", "3", "--lambda", "3"],
        vec!["--n", "1"],
        vec!["--suite", "nonsense"],
        vec!["--n", "3", "--word", "s3"],
        vec!["--word", "x1"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn exit_codes_follow_the_summary() {
    let ok = bin(&["--suite", "algebra", "--n", "2", "--p", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("5 passed, 0 failed"));
    let bad = bin(&["--suite", "resolutions", "--n", "3", "--p", "2", "--lambda", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL resolutions.ln.right"));
}

fn matrix(v: &Value) -> &Value {
    &v["matrix"]
}

#[test]
fn braid_words() {
    for level in [Level::K0, Level::Quantum] {
        assert_eq!(eval_braid_word("s1 S1", 3, 3, 1, level).unwrap()["identity"], true);
        assert_eq!(eval_braid_word("", 3, 3, 1, level).unwrap()["identity"], true);
        let a = eval_braid_word("s1 s2 s1", 3, 3, 1, level).unwrap();
        let b = eval_braid_word("s2,s1,s2", 3, 3, 1, level).unwrap();
        assert_eq!(matrix(&a), matrix(&b));
        assert_eq!(a["identity"], false);
    }
    for w in ["s1", "S2 s1", "s1 s1 S2"] {
        let k = eval_braid_word(w, 3, 5, 1, Level::K0).unwrap();
        let q = eval_braid_word(w, 3, 5, 1, Level::Quantum).unwrap();
        assert_eq!(matrix(&k), matrix(&q), "{w}");
    }
    let v = eval_braid_word("s1", 2, 3, 1, Level::Quantum).unwrap();
    assert_eq!(v["matrix"][0][0], serde_json::json!({ "coeffs": { "2": -1 } }));
}

#[test]
fn word_from_the_binary() {
    let out = bin(&["--n", "3", "--p", "3", "--word", "s1 s2 S2 S1", "--level", "quantum"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identity"], true);
}

#[test]
fn diagrams_round_trip_through_json() {
    for p in [2, 3, 5] {
        for lambda in [0, 1] {
            let a = ZigzagAlgebra::new(4, p, lambda).unwrap();
            for i in 1..4 {
                for side in [Side::Left, Side::Right] {
                    let d = ny_resolution(&a, i, side).unwrap().diagram;
                    let back = parse_diagram(&diagram(&d, &a), &a).unwrap();
                    assert_eq!(back, d);
                }
            }
        }
    }
}

fn read_report(path: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn cache_hits_tampering_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("a.json");
    let args = |json: &Path| -> Vec<String> {
        ["--suite", "rhom", "--n", "3", "--p", "3", "--cache-dir", cache.to_str().unwrap(), "--json", json.to_str().unwrap()]
            .iter()
            .map(|s| s.to_string())
            .collect()
    };
    let run = |json: &Path| {
        let a = args(json);
        bin(&a.iter().map(|s| s.as_str()).collect::<Vec<_>>())
    };
    let first = run(&out);
    assert_eq!(first.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache: 0 hits, 4 misses"));
    let reference = read_report(&out).without_timings();

    let second = run(&dir.path().join("b.json"));
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache: 4 hits, 0 misses"));
    assert_eq!(read_report(&dir.path().join("b.json")).without_timings(), reference);

    let victim = cache.join("ny-3-3-1-left-1.json");
    let text = std::fs::read_to_string(&victim).unwrap().replace("\"P\": 2", "\"P\": 3");
    std::fs::write(&victim, text).unwrap();
    std::fs::write(cache.join("ny-3-3-1-right-2.json"), "{ not json").unwrap();
    let third = run(&dir.path().join("c.json"));
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&third.stderr).contains("cache: 2 hits, 2 misses, 2 discarded"));
    assert_eq!(read_report(&dir.path().join("c.json")).without_timings(), reference);

    std::fs::remove_dir_all(&cache).unwrap();
    run(&dir.path().join("d.json"));
    let a = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let d = std::fs::read_to_string(dir.path().join("d.json")).unwrap();
    let strip = |s: &str| s.lines().filter(|l| !l.contains("\"millis\"")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&d));
}

#[test]
fn report_schema() {
    let (r, _) = run_suite(&cfg(Suite::Burau, 2, 2, 1)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["suite", "params", "checks", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["params"], serde_json::json!({ "lambda": 1, "n": 2, "p": 2 }));
    let c = &v["checks"][0];
    for key in ["id", "params", "status", "witness", "millis"] {
        assert!(c.get(key).is_some(), "{key}");
    }
    assert_eq!(v["summary"]["fail"], 0);
    assert!(r.to_text().ends_with("0 failed, 0 skipped\n"));
}

#[test]
fn job_count_does_not_change_reports() {
    let mut a = cfg(Suite::Tl, 3, 2, 1);
    a.jobs = Some(1);
    let mut b = a.clone();
    b.jobs = Some(4);
    let (ra, _) = run_suite(&a).unwrap();
    let (rb, _) = run_suite(&b).unwrap();
    assert_eq!(ra.without_timings(), rb.without_timings());
}
