use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn rigcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigcheck")).args(args).env_remove("RIGCHECK_SEED").output().expect("binary runs")
}

fn copy_corpus(to: &Path) {
    for e in std::fs::read_dir(corpus()).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

fn json_report(dir: &Path, extra: &[&str]) -> (Output, Value) {
    let out_file = tempfile::NamedTempFile::new().unwrap();
    let path = out_file.path().to_str().unwrap().to_string();
    let mut args = vec!["run", dir.to_str().unwrap(), "--json", &path];
    args.extend_from_slice(extra);
    let out = rigcheck(&args);
    let v = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    (out, v)
}

fn diagram<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["diagrams"].as_array().unwrap().iter().find(|d| d["name"] == name).unwrap()
}

#[test]
fn shipped_corpus_passes() {
    let (out, v) = json_report(&corpus(), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(v["summary"]["verdict"], "pass");
    let names: Vec<&str> = v["diagrams"].as_array().unwrap().iter().map(|d| d["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for d in v["diagrams"].as_array().unwrap() {
        for key in ["name", "mode", "verdict", "maxError", "ms"] {
            assert!(d.get(key).is_some(), "{key} missing in {d}");
        }
    }
}

#[test]
fn self_swap_mutation_fails() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    std::fs::write(
        dir.path().join("mutant.diag"),
        "diagram mutant-self-swap { obj a; assert xiT[a, a] == id[(a * a)] mode exact; }\n\
         diagram mutant-self-swap-model { obj a; assert xiT[a, a] == id[(a * a)] mode model(count=5, maxdim=4); }\n",
    )
    .unwrap();
    let (out, v) = json_report(dir.path(), &["--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["summary"]["fail"], 2);
    assert_eq!(diagram(&v, "mutant-self-swap")["verdict"], "fail");
    assert_eq!(diagram(&v, "pentagon")["verdict"], "pass");
    let model = &diagram(&v, "mutant-self-swap-model")["checks"][0];
    assert_eq!(model["verdict"], "fail");
    assert!(model["counterexample"]["seed"].is_u64());
    assert!(model["counterexample"]["dims"]["a"].as_u64().unwrap() >= 2);
}

#[test]
fn empty_directory_passes_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let out = rigcheck(&["run", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn parse_errors_fail_only_their_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.diag"), "diagram broken { obj a; assert xiT[a, a) == id[a] mode exact; }").unwrap();
    std::fs::write(dir.path().join("skewed.diag"), "diagram skewed { obj a b; assert xiT[a, b] == id[(a * b)] mode exact; }").unwrap();
    std::fs::write(dir.path().join("fine.diag"), "diagram fine { obj a; assert comp(xiT[a, a], xiT[a, a]) == id[(a * a)] mode exact; }").unwrap();
    let (out, v) = json_report(dir.path(), &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagram(&v, "fine")["verdict"], "pass");
    assert!(diagram(&v, "broken")["error"].as_str().unwrap().contains("1:40"));
    assert!(diagram(&v, "skewed")["error"].as_str().unwrap().contains("type error"));
}

#[test]
fn homotopy_reports_carry_witness_numbers() {
    let (_, v) = json_report(&corpus(), &[]);
    let c = &diagram(&v, "stable-comm-mu")["checks"][0];
    assert!(c["continuityBound"].as_f64().unwrap() <= 0.1);
    assert!(c["endpointError"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("m.diag"), "diagram m { obj a b; assert comp(xiT[b, a], xiT[a, b]) == id[(a * b)] mode model; }").unwrap();
    let out_file = tempfile::NamedTempFile::new().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_rigcheck"))
        .args(["run", dir.path().to_str().unwrap(), "--json", out_file.path().to_str().unwrap()])
        .env("RIGCHECK_SEED", "77")
        .output()
        .unwrap();
    assert!(status.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_file.path()).unwrap()).unwrap();
    assert_eq!(diagram(&v, "m")["checks"][0]["seed"], 77);
}

#[test]
fn same_seed_same_json() {
    let strip = |mut v: Value| {
        for d in v["diagrams"].as_array_mut().unwrap() {
            d.as_object_mut().unwrap().remove("ms");
        }
        serde_json::to_string(&v).unwrap()
    };
    let (_, a) = json_report(&corpus(), &["--mode", "model", "--seed", "11"]);
    let (_, b) = json_report(&corpus(), &["--mode", "model", "--seed", "11"]);
    assert_eq!(strip(a), strip(b));
}
