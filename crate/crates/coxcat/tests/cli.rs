//! Command-line behavior: output formats, exit codes, export round-trips,
//! caching, and byte-determinism of repeated invocations.

use coxcat::cache::{
    complex_to_json, lattice_to_json, read_complex_export, read_lattice_export, CacheDir,
};
use coxcat::cli::run_captured;
use coxcat::identity::Pipeline;
use coxcat::roots::TypeSpec;

fn tempdir() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn compute_outputs_are_deterministic() {
    for args in [
        vec!["--no-cache", "compute", "f-triangle", "B3"],
        vec!["--no-cache", "compute", "m-triangle", "A3", "--format", "json"],
        vec!["--no-cache", "compute", "char-poly", "H3"],
        vec!["--no-cache", "compute", "f-vector", "A3", "--format", "csv"],
        vec!["--no-cache", "verify", "fm", "B2", "--format", "json"],
    ] {
        let (c1, o1) = run_captured(&args);
        let (c2, o2) = run_captured(&args);
        assert_eq!(c1, 0, "{args:?}: {o1}");
        assert_eq!((c1, &o1), (c2, &o2), "{args:?} not deterministic");
    }
}

#[test]
fn compute_h_poly_and_rank_gen_agree() {
    let (_, h) = run_captured(&["--no-cache", "compute", "h-poly", "B3"]);
    let (_, r) = run_captured(&["--no-cache", "compute", "rank-gen", "B3"]);
    let tail = |s: &str| s.split('=').nth(1).unwrap().trim().to_string();
    assert_eq!(tail(&h), tail(&r));
}

#[test]
fn export_complex_round_trips() {
    let dir = tempdir();
    let path = dir.path().join("a2-complex.json");
    let (code, out) = run_captured(&[
        "--no-cache",
        "export",
        "complex",
        "A2",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let loaded = read_complex_export(&path).unwrap();
    assert_eq!(loaded.vertices.len(), 5);
    assert_eq!(loaded.facets.len(), 5);

    // importing yields an object whose re-export is identical
    let p = Pipeline::build(&TypeSpec::parse("A2").unwrap(), 10_000_000).unwrap();
    let fresh = complex_to_json(&p.rs, &p.complex);
    assert_eq!(loaded, fresh);
}

#[test]
fn export_lattice_round_trips() {
    let dir = tempdir();
    let path = dir.path().join("a1-lattice.json");
    let (code, _) = run_captured(&[
        "--no-cache",
        "export",
        "lattice",
        "A1",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let loaded = read_lattice_export(&path).unwrap();
    assert_eq!(loaded.elements.len(), 2);
    assert_eq!(loaded.covers, vec![(0, 1)]);
    assert_eq!(loaded.mobius, vec![1, -1]);

    let p = Pipeline::build(&TypeSpec::parse("A1").unwrap(), 10_000_000).unwrap();
    assert_eq!(loaded, lattice_to_json(&p.rs, &p.lattice));
}

#[test]
fn export_to_unwritable_path_exits_4() {
    let (code, out) = run_captured(&[
        "--no-cache",
        "export",
        "complex",
        "A2",
        "/nonexistent-dir/out.json",
    ]);
    assert_eq!(code, 4, "{out}");
}

#[test]
fn budget_override_exits_3() {
    let (code, out) = run_captured(&["--no-cache", "--budget", "4", "compute", "facets", "A3"]);
    assert_eq!(code, 3, "{out}");
    // verify reports SKIPPED instead of failing silently
    let (code, out) = run_captured(&["--no-cache", "--budget", "4", "verify", "fm", "A3"]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("SKIPPED"), "{out}");
}

#[test]
fn cache_hit_and_miss_agree() {
    let dir = tempdir();
    let cache_flag = format!("--cache-dir={}", dir.path().display());
    let args = [cache_flag.as_str(), "verify", "fm", "A3"];
    let (c1, miss) = run_captured(&args);
    assert_eq!(c1, 0);
    assert!(dir.path().read_dir().unwrap().count() >= 2, "cache populated");
    let (c2, hit) = run_captured(&args);
    assert_eq!(c2, 0);
    assert_eq!(miss, hit, "cache hit changed the verify report");

    // clearing the cache reproduces the original output
    for entry in dir.path().read_dir().unwrap() {
        std::fs::remove_file(entry.unwrap().path()).unwrap();
    }
    let (_, cleared) = run_captured(&args);
    assert_eq!(miss, cleared);
}

#[test]
fn cache_env_var_is_honored() {
    let dir = tempdir();
    std::env::set_var("COXCAT_CACHE", dir.path());
    let resolved = CacheDir::resolve(None).unwrap();
    assert_eq!(resolved.path(), dir.path());
    std::env::remove_var("COXCAT_CACHE");
}

#[test]
fn verify_all_json_summary() {
    let (code, out) = run_captured(&[
        "--no-cache",
        "verify",
        "all",
        "--max-rank",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["reports"].as_array().unwrap().len() >= 12); // A1, A2, B2, G2, I2(3..10), products
}

#[test]
fn verify_seed_is_recorded() {
    let (code, out) = run_captured(&[
        "--no-cache", "verify", "fm", "A2", "--seed", "99", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["reports"][0]["seed"], 99);
}
