//! End-to-end runs of the binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn exe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excite-iter")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn run_into(dir: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", dir.to_str().unwrap()]);
    exe(&all)
}

#[test]
fn soluble_run_writes_every_artifact() {
    let dir = tempdir().unwrap();
    let out = run_into(dir.path(), &["soluble", "--delta", "0.1", "--iters", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["summary.json", "chi_curves.csv", "wavefunctions.csv", "groundstate.csv", "groundstate.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let chi = fs::read_to_string(dir.path().join("chi_curves.csv")).unwrap();
    assert!(chi.starts_with("x,chi_0,chi_1,chi_2,chi_3,chi_exact\n"));
    assert!(!chi.contains('\r'));
    let waves = fs::read_to_string(dir.path().join("wavefunctions.csv")).unwrap();
    assert!(waves.starts_with("x,psi_gd,psi_ex\n"));

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let eps = summary["eps_sequence"].as_array().unwrap();
    assert_eq!(eps.len(), 3);
    for (got, want) in eps.iter().zip([0.59086, 0.31348, 0.30924]) {
        assert!((got.as_f64().unwrap() - want).abs() < 5e-5);
    }
    assert!((summary["exact_epsilon"].as_f64().unwrap() - 0.30916).abs() < 5e-5);

    let cmp = exe(&["compare", "--summary", dir.path().join("summary.json").to_str().unwrap(), "--ref", "eq_3_17"]);
    assert_eq!(code(&cmp), 0, "{}", String::from_utf8_lossy(&cmp.stdout));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    let args = ["quartic", "--g", "8", "--iters", "3"];
    assert_eq!(code(&run_into(a.path(), &args)), 0);
    assert_eq!(code(&run_into(b.path(), &args)), 0);
    for f in ["summary.json", "chi_curves.csv", "wavefunctions.csv", "groundstate.csv", "groundstate.json"] {
        let x = fs::read(a.path().join(f)).unwrap();
        let y = fs::read(b.path().join(f)).unwrap();
        if f == "summary.json" {
            // the output directory is echoed
            let strip = |v: &[u8]| {
                let mut j: serde_json::Value = serde_json::from_slice(v).unwrap();
                j["config"]["out_dir"] = serde_json::Value::Null;
                j
            };
            assert_eq!(strip(&x), strip(&y));
        } else {
            assert_eq!(x, y, "{f} differs");
        }
    }
}

#[test]
fn perturbed_summary_fails_comparison() {
    let dir = tempdir().unwrap();
    assert_eq!(code(&run_into(dir.path(), &["soluble", "--iters", "3"])), 0);
    let path = dir.path().join("summary.json");
    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let e3 = j["eps_sequence"][2].as_f64().unwrap();
    j["eps_sequence"][2] = serde_json::json!(e3 + 1e-3);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&j).unwrap()).unwrap();
    let out = exe(&["compare", "--summary", bad.to_str().unwrap(), "--ref", "eq_3_17"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn comparison_rejects_summary_from_another_setup() {
    let dir = tempdir().unwrap();
    assert_eq!(code(&run_into(dir.path(), &["soluble", "--iters", "3"])), 0);
    let out = exe(&["compare", "--summary", dir.path().join("summary.json").to_str().unwrap(), "--ref", "eq_4_6"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        vec!["soluble", "--delta", "2.0", "--out", d],
        vec!["soluble", "--g", "3", "--out", d],
        vec!["quartic", "--g", "-1", "--out", d],
        vec!["quartic", "--anchor", "0.3333", "--out", d],
        vec!["quartic", "--points", "1000", "--out", d],
        vec!["soluble", "--xmax", "2", "--out", d],
        vec!["compare", "--summary", "x.json", "--ref", "eq_9_9"],
    ] {
        assert_eq!(code(&exe(&args)), 2, "{args:?}");
    }
}

#[test]
fn numeric_failures_exit_with_one() {
    let dir = tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&exe(&["compare", "--summary", missing.to_str().unwrap(), "--ref", "eq_4_6"])), 1);
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{not json").unwrap();
    assert_eq!(code(&exe(&["compare", "--summary", junk.to_str().unwrap(), "--ref", "eq_4_6"])), 1);
    // a cached ground state with a corrupted sample
    let cache = dir.path().join("gs.csv");
    let args = ["quartic", "--g", "8", "--iters", "1", "--out", d, "--gs-cache", cache.to_str().unwrap()];
    assert_eq!(code(&exe(&args)), 0);
    let text = fs::read_to_string(&cache).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<&str> = lines[10].split(',').collect();
    fields[1] = "nan";
    lines[10] = fields.join(",");
    fs::write(&cache, lines.join("\n") + "\n").unwrap();
    assert_eq!(code(&exe(&args)), 1);
}

#[test]
fn cached_ground_state_is_reused() {
    let dir = tempdir().unwrap();
    let cache = dir.path().join("gs.csv");
    let cache_s = cache.to_str().unwrap();
    let first = dir.path().join("a");
    let second = dir.path().join("b");
    let base = ["quartic", "--g", "3", "--iters", "2", "--gs-cache", cache_s];
    assert_eq!(code(&run_into(&first, &base)), 0);
    assert!(cache.exists());
    let stamp = fs::metadata(&cache).unwrap().modified().unwrap();
    assert_eq!(code(&run_into(&second, &base)), 0);
    assert_eq!(fs::metadata(&cache).unwrap().modified().unwrap(), stamp);
    assert!(!second.join("groundstate.csv").exists());
    assert_eq!(
        fs::read(first.join("chi_curves.csv")).unwrap(),
        fs::read(second.join("chi_curves.csv")).unwrap()
    );
    // a cache built for another coupling is refused
    let other = dir.path().join("c");
    assert_eq!(code(&run_into(&other, &["quartic", "--g", "5", "--gs-cache", cache_s])), 2);
}
