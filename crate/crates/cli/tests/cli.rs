use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nonrev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonrev")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_to(dir: &Path, name: &str, structure: &str, strategy: &str, steps: &str) -> String {
    let out = dir.join(name);
    let o = nonrev(&["run", "--structure", structure, "--strategy", strategy, "--steps", steps, "--out", out.to_str().unwrap(), "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out.to_str().unwrap().to_string()
}

#[test]
fn structures_listing() {
    let o = nonrev(&["structures"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let block = |id: &str| {
        let start = text.find(&format!("{id}\n")).unwrap();
        text[start..].lines().nth(2).unwrap().to_string()
    };
    assert!(block("divisibility").contains("well-founded"));
    assert!(block("zxz").contains("convex, product-lift"));
    assert!(block("random-poset").contains("universal"));
}

#[test]
fn run_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = run_to(dir.path(), "d.json", "divisibility", "well-founded", "400");
    let o = nonrev(&["verify", &path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("[ok]")));
}

#[test]
fn identical_requests_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(dir.path(), "a.json", "half-plane", "rooted-directed", "50");
    let b = run_to(dir.path(), "b.json", "half-plane", "rooted-directed", "50");
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn zero_steps_write_the_seed_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = run_to(dir.path(), "z.json", "finite-sets", "well-founded", "0");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 0);
    assert_eq!(v["final"], v["seed"]);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    let incompatible = nonrev(&["run", "--structure", "divisibility", "--strategy", "convex", "--steps", "4", "--out", out]);
    assert_eq!(code(&incompatible), 2);
    let bad_seed = nonrev(&["run", "--structure", "divisibility", "--strategy", "well-founded", "--steps", "4", "--out", out, "--seed-spec", "b0=2;b1=3"]);
    assert_eq!(code(&bad_seed), 2);
    assert_eq!(code(&nonrev(&["run", "--structure", "divisibility"])), 2);
    assert_eq!(code(&nonrev(&["oracle", "finite", "--max-size", "9"])), 2);
    assert!(!Path::new(out).exists());
}

#[test]
fn tampered_certificate_exits_one_and_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = run_to(dir.path(), "d.json", "divisibility", "well-founded", "20");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("\"x1\": \"3\"", "\"x1\": \"5\"", 1)).unwrap();
    let o = nonrev(&["verify", &path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] bad-witness"));
}

#[test]
fn malformed_files_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, "{\"structure\": 3}").unwrap();
    assert_eq!(code(&nonrev(&["verify", path.to_str().unwrap()])), 4);
    assert_eq!(code(&nonrev(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 4);
}

#[test]
fn oracles_report_json() {
    let o = nonrev(&["oracle", "finite", "--max-size", "4"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sizes"][4]["posets"], 219);
    assert_eq!(v["sizes"][4]["bad"], 0);

    let args = ["oracle", "witnesses", "--structure", "random-poset", "--trials", "500", "--seed", "7"];
    let (a, b) = (nonrev(&args), nonrev(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn lifts_write_verifying_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let d = run_to(dir.path(), "d.json", "divisibility", "well-founded", "200");
    let p = dir.path().join("p.json");
    let o = nonrev(&["lift", "product", "--from", &d, "--prefix", "200", "--out", p.to_str().unwrap(), "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["bad_witness"]["x1"], "(3,0)");

    let f = run_to(dir.path(), "f.json", "finite-sets", "well-founded", "300");
    let s = dir.path().join("s.json");
    let o = nonrev(&["lift", "subset", "--from", &f, "--prefix", "128", "--out", s.to_str().unwrap(), "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = nonrev(&["lift", "subset", "--from", &d, "--prefix", "128", "--out", s.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn grown_fragment_dump() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(code(&nonrev(&["grow-random", "--steps", "30", "--seed", "3", "--out", g.to_str().unwrap()])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 30);
    assert!(v["strict_pairs"].is_array());
}
