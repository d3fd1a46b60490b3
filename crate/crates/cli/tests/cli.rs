use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tempfile::TempDir;
use zchan_core::prob::{random_joint_distribution, Alphabets};

fn zchan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zchan"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run zchan")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_json(path: &Path, v: &Value) {
    fs::write(path, serde_json::to_string(v).unwrap()).unwrap();
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

fn standard_channel(dir: &Path) {
    write_json(
        &dir.join("ch.json"),
        &json!({"form": "standard", "a": 1.0, "a1": 2.0, "a2": 1.0, "P1": 1.0, "P2": 1.0, "Q": 1.0}),
    );
}

#[test]
fn sim_is_byte_identical_and_in_band() {
    let t = TempDir::new().unwrap();
    let args = ["lattice", "sim", "--decoder", "2", "--samples", "1000000", "--seed", "42", "--out"];
    let a = zchan(t.path(), &[&args[..], &["a.json"]].concat());
    let b = zchan(t.path(), &[&args[..], &["b.json"]].concat());
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(code(&b), 0);
    assert_eq!(fs::read(t.path().join("a.json")).unwrap(), fs::read(t.path().join("b.json")).unwrap());
    let stats = read_json(&t.path().join("a.json"));
    assert_eq!(stats["pass"], true);
    assert_eq!(stats["config"]["rho"], 0.5);
    for v in stats["variances"].as_array().unwrap() {
        assert_eq!(v["pass"], true, "{v}");
    }
}

#[test]
fn absent_seed_means_zero() {
    let t = TempDir::new().unwrap();
    let base = ["lattice", "sim", "--samples", "20000", "--out"];
    assert_eq!(code(&zchan(t.path(), &[&base[..], &["none.json"]].concat())), 0);
    assert_eq!(code(&zchan(t.path(), &[&base[..], &["zero.json", "--seed", "0"]].concat())), 0);
    assert_eq!(code(&zchan(t.path(), &[&base[..], &["one.json", "--seed", "1"]].concat())), 0);
    let read = |n: &str| fs::read(t.path().join(n)).unwrap();
    assert_eq!(read("none.json"), read("zero.json"));
    assert_ne!(read("zero.json"), read("one.json"));
}

#[test]
fn stats_selector_filters_sections() {
    let t = TempDir::new().unwrap();
    write_json(&t.path().join("cfg.json"), &json!({"rho": 0.4, "stats": ["variances"]}));
    let o = zchan(t.path(), &["lattice", "sim", "--config", "cfg.json", "--samples", "20000", "--out", "s.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = read_json(&t.path().join("s.json"));
    assert!(s.get("variances").is_some());
    assert!(s.get("correlations").is_none());
    assert_eq!(s["config"]["rho"], 0.4);
}

#[test]
fn config_errors_exit_2() {
    let t = TempDir::new().unwrap();
    write_json(&t.path().join("typo.json"), &json!({"rh0": 0.4}));
    let o = zchan(t.path(), &["lattice", "sim", "--config", "typo.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("rh0"));
    write_json(&t.path().join("rho.json"), &json!({"rho": 1.5}));
    assert_eq!(code(&zchan(t.path(), &["lattice", "sim", "--config", "rho.json"])), 2);
    assert_eq!(code(&zchan(t.path(), &["lattice", "sim", "--samples", "10"])), 2);
}

#[test]
fn short_mass_exits_2() {
    let t = TempDir::new().unwrap();
    write_json(&t.path().join("d.json"), &json!({"alphabets": {"S": 2}, "factors": {"s": [0.5, 0.4]}}));
    let o = zchan(t.path(), &["dmc-region", "--dist", "d.json", "--out", "r.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("mass 0.9"), "{}", stderr(&o));
    assert!(!t.path().join("r.json").exists());
}

#[test]
fn missing_file_exits_2() {
    let t = TempDir::new().unwrap();
    let o = zchan(t.path(), &["dmc-region", "--dist", "nope.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nope.json"));
}

#[test]
fn region_from_file() {
    let t = TempDir::new().unwrap();
    let d = random_joint_distribution(3, Alphabets::uniform(2).unwrap()).unwrap();
    write_json(&t.path().join("d.json"), &d.to_json());
    for theorem in ["1", "3"] {
        let o = zchan(t.path(), &["dmc-region", "--dist", "d.json", "--theorem", theorem, "--out", "r.json"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let r = read_json(&t.path().join("r.json"));
        assert_eq!(r["coords"], json!(["R11", "R21", "R22"]));
    }
    let m = read_json(&t.path().join("r.manifest.json"));
    assert_eq!(m["inputs"].as_array().unwrap().len(), 1);
    let o = zchan(t.path(), &["dmc-region", "--dist", "d.json", "--theorem", "2"]);
    assert_eq!(code(&o), 2, "second theorem needs U1 = U");
}

#[test]
fn fme_check_reports_both_variants() {
    let t = TempDir::new().unwrap();
    let o = zchan(t.path(), &["dmc-region", "--random", "2", "--seed", "1", "--fme-check", "--out", "r.json"]);
    assert!([0, 3].contains(&code(&o)), "{}", stderr(&o));
    let rep = read_json(&t.path().join("r.fme.json"));
    assert!(rep["outcome"]["D"].is_boolean());
    assert!(rep["outcome"]["D'"].is_boolean());
    let matched = rep["outcome"]["D"].as_bool().unwrap();
    assert_eq!(code(&o) == 0, matched);
}

#[test]
fn fme_projects_a_system() {
    let t = TempDir::new().unwrap();
    write_json(
        &t.path().join("s.json"),
        &json!({
            "vars": ["x", "y"],
            "mode": "rational",
            "rows": [
                {"a": ["1", "1"], "rel": "<=", "b": "3"},
                {"a": ["-1", "0"], "rel": "<=", "b": "0"},
                {"a": ["0", "-1"], "rel": "<=", "b": "0"}
            ]
        }),
    );
    let o = zchan(t.path(), &["fme", "--input", "s.json", "--keep", "x", "--out", "p.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let p = read_json(&t.path().join("p.json"));
    assert_eq!(p["vars"], json!(["x"]));
    assert_eq!(p["mode"], "rational");
    assert_eq!(p["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn default_sweep_rows_and_manifest() {
    let t = TempDir::new().unwrap();
    standard_channel(t.path());
    let o = zchan(t.path(), &["gauss-dpc", "--channel", "ch.json", "--out-dir", "out", "--svg", "out/p.svg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(t.path().join("out/dpc_sweep.csv")).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "xi,gamma,b61,b62,b63,b64,b65");
    assert_eq!(lines.len() - 1, 101 * 41);
    assert!(fs::read_to_string(t.path().join("out/p.svg")).unwrap().contains("<polyline"));
    let m = read_json(&t.path().join("out/dpc_manifest.json"));
    assert_eq!(m["subcommand"], "gauss-dpc");
    assert_eq!(m["seeds"], json!([0]));
    let outputs = m["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), 3);
    for f in outputs {
        let bytes = fs::read(t.path().join(f["path"].as_str().unwrap())).unwrap();
        assert_eq!(hex::encode(Sha256::digest(&bytes)), f["sha256"].as_str().unwrap());
    }
}

#[test]
fn lemma_and_q_reports_pass() {
    let t = TempDir::new().unwrap();
    standard_channel(t.path());
    let o = zchan(
        t.path(),
        &["gauss-dpc", "--channel", "ch.json", "--xi-grid", "11", "--gamma-grid", "5", "--verify", "lemma1", "--q-sweep"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read_json(&t.path().join("dpc_lemma1.json"))["pass"], true);
    assert_eq!(read_json(&t.path().join("dpc_q_sweep.json"))["pass"], true);
}

#[test]
fn literal_determinant_form_is_a_finding() {
    let t = TempDir::new().unwrap();
    standard_channel(t.path());
    let o = zchan(t.path(), &["gauss-dpc", "--channel", "ch.json", "--xi-grid", "11", "--gamma-grid", "5", "--verify", "det"]);
    assert_eq!(code(&o), 3);
    let o = zchan(t.path(), &["verify", "det", "--out", "det.json"]);
    assert_eq!(code(&o), 3);
    let rep = read_json(&t.path().join("det.json"));
    assert_eq!(rep["pass"], false);
    assert!(!rep["findings"].as_array().unwrap().is_empty());
}

#[test]
fn invalid_channel_exits_2() {
    let t = TempDir::new().unwrap();
    write_json(
        &t.path().join("ch.json"),
        &json!({"form": "raw", "a11": 1.0, "a21": 1.0, "a22": 1.0, "N1": 0.0, "N2": 1.0, "Q": 1.0, "P1star": 1.0, "P2star": 1.0}),
    );
    let o = zchan(t.path(), &["gauss-dpc", "--channel", "ch.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("N1"));
}

#[test]
fn lattice_region_frontier() {
    let t = TempDir::new().unwrap();
    let o = zchan(t.path(), &["lattice", "region", "--out", "f.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(t.path().join("f.csv")).unwrap();
    assert!(csv.starts_with("rho,alpha0,R11,R21,R22\n"));
    assert!(csv.lines().count() > 2);
}

#[test]
fn verify_suites_pass() {
    let t = TempDir::new().unwrap();
    for suite in ["q-invariance", "lattice-formulas"] {
        let o = zchan(t.path(), &["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", stderr(&o));
        let rep: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(rep["pass"], true);
    }
    assert_eq!(code(&zchan(t.path(), &["verify", "nope"])), 2);
}

#[test]
fn replay_reproduces_outputs() {
    let t = TempDir::new().unwrap();
    standard_channel(t.path());
    let o = zchan(t.path(), &["gauss-dpc", "--channel", "ch.json", "--xi-grid", "11", "--gamma-grid", "5"]);
    assert_eq!(code(&o), 0);
    let o = zchan(t.path(), &["replay", "dpc_manifest.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    fs::write(t.path().join("dpc_sweep.csv"), "tampered\n").unwrap();
    let m = read_json(&t.path().join("dpc_manifest.json"));
    let mut bad = m.clone();
    bad["outputs"][0]["sha256"] = json!("00");
    write_json(&t.path().join("bad.json"), &bad);
    assert_eq!(code(&zchan(t.path(), &["replay", "bad.json"])), 3);
}
