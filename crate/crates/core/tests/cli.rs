use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn cvxfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvxfun")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("cvxfun-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const SEGMENT: &str = r#"{"kind":"body","dim":1,"vertices":[["-1"],["1"]]}"#;
const SQUARE: &str = r#"{"kind":"body","dim":2,"vertices":[[1,1],[1,-1],[-1,1],[-1,-1]]}"#;

fn vertices(v: &Value) -> usize {
    v["vertices"].as_array().unwrap().len()
}

#[test]
fn functor_commands() {
    let s = Scratch::new("functors");
    let seg = s.file("seg.json", SEGMENT);
    let out_path = s.path("t.json");
    let out = cvxfun(&["tensor", &seg, &seg, "-o", &out_path]);
    assert_eq!(out.status.code(), Some(0));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((t["dim"].as_u64(), vertices(&t)), (Some(3), 4));
    assert_eq!(t["provenance"]["tool"], "cvxfun");
    assert_eq!(t["provenance"]["functor"], "tensor");

    let sym = json(&cvxfun(&["sym", &seg, "-n", "3"]));
    assert_eq!((sym["dim"].as_u64(), vertices(&sym)), (Some(3), 4));

    let cube = s.file(
        "cube.json",
        r#"{"kind":"body","dim":3,"vertices":[[-1,-1,-1],[-1,-1,1],[-1,1,-1],[-1,1,1],[1,-1,-1],[1,-1,1],[1,1,-1],[1,1,1]]}"#,
    );
    let w = json(&cvxfun(&["schur", &cube, "--shape", "1,1"]));
    assert_eq!(vertices(&w), 12);

    let polar = json(&cvxfun(&["dual", &cube]));
    assert_eq!(vertices(&polar), 6);

    let orth = s.file("orth.json", r#"{"kind":"cone","dim":2,"rays":[[1,0],[0,1]]}"#);
    let hom = json(&cvxfun(&["hom", &orth, &orth]));
    assert_eq!(hom["rays"].as_array().unwrap().len(), 4);

    let prod = json(&cvxfun(&["product", &seg, &seg]));
    assert_eq!(vertices(&prod), 4);
}

#[test]
fn outputs_are_reproducible() {
    let s = Scratch::new("repro");
    let seg = s.file("seg.json", SEGMENT);
    let a = cvxfun(&["--seed", "4", "gen", "body", "--dim", "2"]);
    let b = cvxfun(&["--seed", "4", "gen", "body", "--dim", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["provenance"]["seed"], 4);
    let x = cvxfun(&["sym", &seg, "-n", "2"]);
    assert_eq!(x.stdout, cvxfun(&["sym", &seg, "-n", "2"]).stdout);
    assert!(x.stdout.ends_with(b"\n"));
}

#[test]
fn linearize_reports_equal_values() {
    let s = Scratch::new("linearize");
    let seg = s.file("seg.json", SEGMENT);
    // a₁x₁x₂ + a₂x₁ + a₃x₂ + a₄ with a = (1, 0, 0, 0), lifted to (x, 1).
    let obj = s.file("xy.json", r#"{"kind":"objective","order":2,"lift_dims":[2,2],"coeffs":[[1,0],[0,0]],"symmetric":false}"#);
    let out = cvxfun(&["linearize", &obj, &seg, &seg, "--check-bruteforce"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((&r["lp_value"], &r["brute_force_value"], &r["equal"]), (&"1".into(), &"1".into(), &true.into()));

    let sq = s.file("sq.json", SQUARE);
    let random = s.path("obj.json");
    assert_eq!(cvxfun(&["--seed", "9", "gen", "objective", "--lift-dims", "3,3,3", "--symmetric", "-o", &random]).status.code(), Some(0));
    let r = json(&cvxfun(&["linearize", &random, &sq, "--check-bruteforce"]));
    assert_eq!(r["equal"], true);

    let out = cvxfun(&["linearize", &obj, &sq, &seg]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "dimension");
}

#[test]
fn hierarchy_queries() {
    let s = Scratch::new("hierarchy");
    let pm1 = s.file("pm1.json", r#"{"kind":"measure","type":"points","points":[[-1],[1]]}"#);
    let x = s.file("x.json", r#"{"kind":"map","nvars":1,"components":[[[[1],"1"]]]}"#);
    let pencil = s.path("pencil.json");
    let r = json(&cvxfun(&["hierarchy", "--points", &pm1, "--map", &x, "-k", "1", "--maximize", "1", "--pencil-out", &pencil]));
    let v = r["levels"][0]["maximize"]["value"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-6);
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&pencil).unwrap()).unwrap();
    assert_eq!((p["kind"].as_str(), p["k"].as_u64()), (Some("pencil"), Some(1)));

    let sq = s.file("sq.json", SQUARE);
    let ab = s.file("ab.json", r#"{"kind":"map","nvars":2,"components":[[[[1,0],1]],[[[0,1],1]],[[[1,1],1]]]}"#);
    let r = json(&cvxfun(&["hierarchy", "--points", &sq, "--map", &ab, "--finite-convergence", "--kmax", "4", "-k", "0"]));
    assert_eq!(r["finite_convergence"]["verified"], true);
    assert!(r["finite_convergence"]["k_star"].as_u64().unwrap() <= 4);

    let boxm = s.file("box.json", r#"{"kind":"measure","type":"box","lower":[-1],"upper":[1]}"#);
    let r = json(&cvxfun(&["hierarchy", "--measure", &boxm, "-k", "0..3", "--maximize", "-1"]));
    let vals: Vec<f64> = r["levels"].as_array().unwrap().iter().map(|l| l["maximize"]["value"].as_f64().unwrap()).collect();
    assert_eq!(vals.len(), 4);
    assert!(vals.windows(2).all(|w| w[1] <= w[0] + 2e-6), "{vals:?}");

    let line = s.file("line.json", r#"{"kind":"measure","type":"points","points":[[0,0],[1,1],[2,2]]}"#);
    let out = cvxfun(&["hierarchy", "--points", &line, "--finite-convergence"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].as_str().unwrap().contains("recenter"));
}

#[test]
fn verify_paper_exit_codes() {
    let ok = cvxfun(&["verify-paper"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = json(&ok);
    assert_eq!(r["passed"], true);
    assert!(r["items"].as_array().unwrap().iter().all(|i| i["anchor"].is_string()));
    let perturbed = cvxfun(&["verify-paper", "--beta=0,1,0,1,1,0,0,0,1"]);
    assert_eq!(perturbed.status.code(), Some(1));
    let r = json(&perturbed);
    let item = r["items"].as_array().unwrap().iter().find(|i| i["name"] == "tensor-counterexample").unwrap();
    assert_eq!(item["passed"], false);
}

#[test]
fn stsp_generation_and_caps() {
    let r = json(&cvxfun(&["gen", "stsp", "-n", "5"]));
    assert_eq!(vertices(&r), 12);
    assert_eq!(vertices(&json(&cvxfun(&["gen", "stsp", "-n", "4"]))), 3);
    assert_eq!(cvxfun(&["gen", "stsp", "-n", "3"]).status.code(), Some(2));
    let capped = cvxfun(&["gen", "stsp", "-n", "8"]);
    assert_eq!(capped.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&capped.stderr).unwrap();
    assert_eq!(err["error"]["code"], "size-cap");
}

#[test]
fn input_errors_exit_two() {
    let missing = Path::new("/nonexistent/cvxfun.json").to_string_lossy().into_owned();
    assert_eq!(cvxfun(&["dual", &missing]).status.code(), Some(2));
    let s = Scratch::new("errors");
    let bad = s.file("bad.json", r#"{"kind":"body","dim":1,"vertices":[[0.5],[-1]]}"#);
    assert_eq!(cvxfun(&["dual", &bad]).status.code(), Some(2));
    assert_eq!(cvxfun(&["no-such-command"]).status.code(), Some(2));
}
