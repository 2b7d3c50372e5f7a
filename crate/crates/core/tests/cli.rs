use std::fs;
use std::path::PathBuf;
use std::process::Command;

use periodic_tomography::cli::run;
use periodic_tomography::matrix::verify_solution;
use periodic_tomography::{BinaryMatrix, Instance};

const EXAMPLE_1: &str = r#"{"m":4,"n":4,"p":1,"q":1,"R":[2,2,1,2],"C":[2,1,2,2]}"#;
const ROW_PERIOD: &str = r#"{"m":7,"n":7,"p":2,"q":1,"R":[2,3,2,4,3,4,2],"C":[3,4,3,3,4,2,1]}"#;
// no satisfiable anchor splits among the classes directly; needs the bar search
const NEEDS_SEARCH: &str = r#"{"m":5,"n":8,"p":3,"q":1,"R":[6,2,4,5,2],"C":[1,3,3,2,3,2,3,2]}"#;
const A1: &str = "1010\n0101\n0010\n1001\n";

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("ptomo-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn ptomo(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ptomo").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn solves_and_verifies(instance: &str) -> BinaryMatrix {
    let s = Scratch::new("sv");
    let path = s.file("i.json", instance);
    let (code, out, err) = ptomo(&["solve", &path]);
    assert_eq!(code, 0, "{err}");
    let inst = Instance::from_json(instance).unwrap();
    let a: BinaryMatrix = out.parse().unwrap();
    assert!(verify_solution(&a, &inst.pair().unwrap(), inst.period().unwrap()));
    a
}

#[test]
fn solve_examples() {
    solves_and_verifies(EXAMPLE_1);
    solves_and_verifies(ROW_PERIOD);
    let column = r#"{"m":7,"n":7,"p":1,"q":2,"R":[3,4,3,3,4,2,1],"C":[2,3,2,4,3,4,2]}"#;
    solves_and_verifies(column);
    solves_and_verifies(NEEDS_SEARCH);
}

#[test]
fn solve_failures() {
    let s = Scratch::new("fail");
    let unbalanced = s.file("u.json", r#"{"m":2,"n":2,"p":1,"q":1,"R":[1,1],"C":[1,0]}"#);
    let (code, out, _) = ptomo(&["solve", &unbalanced]);
    assert_eq!((code, out.as_str()), (1, "INFEASIBLE\n"));
    let too_big = s.file("b.json", r#"{"m":2,"n":2,"p":1,"q":1,"R":[3,1],"C":[2,2]}"#);
    assert_eq!(ptomo(&["solve", &too_big]).0, 1);

    let unsupported = s.file("p.json", r#"{"m":5,"n":5,"p":2,"q":2,"R":[0,0,0,0,0],"C":[0,0,0,0,0]}"#);
    assert_eq!(ptomo(&["solve", &unsupported]).0, 2);
    let zero = s.file("z.json", r#"{"m":1,"n":1,"p":0,"q":0,"R":[0],"C":[0]}"#);
    assert_eq!(ptomo(&["solve", &zero]).0, 2);
    let unknown = s.file("k.json", r#"{"m":1,"n":1,"p":1,"q":1,"R":[0],"C":[0],"extra":1}"#);
    assert_eq!(ptomo(&["solve", &unknown]).0, 2);
    assert_eq!(ptomo(&["solve", "/nonexistent/instance.json"]).0, 2);
    assert_eq!(ptomo(&["frobnicate"]).0, 2);

    let search = s.file("s.json", NEEDS_SEARCH);
    let (code, _, err) = ptomo(&["solve", &search, "--budget", "0"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn solve_json_and_timing() {
    let s = Scratch::new("json");
    let path = s.file("i.json", EXAMPLE_1);
    let (code, out, _) = ptomo(&["solve", &path, "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "solved");
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);

    let path = s.file("r.json", ROW_PERIOD);
    let (code, _, err) = ptomo(&["solve", &path, "--time"]);
    assert_eq!(code, 0);
    let header = err.lines().next().unwrap();
    assert_eq!(header.split('\t').count(), 8);
    assert!(header.starts_with("preprocess\t"));
}

#[test]
fn xray_examples() {
    let s = Scratch::new("xray");
    let f = s.file("f.txt", "00100\n10010\n01001\n10100\n");
    assert_eq!(ptomo(&["xray", &f, "--dir", "1,0"]).1, "1 2 2 2\n");
    assert_eq!(ptomo(&["xray", &f, "--dir", "0,1"]).1, "2 1 2 1 1\n");
    let z = s.file("z.txt", "00\n00\n");
    assert_eq!(ptomo(&["xray", &z, "--dir", "1,1"]).1, "0 0 0\n");
    assert_eq!(ptomo(&["xray", &z, "--dir", "1,1", "--format", "json"]).1, "[0,0,0]\n");
    let bad = s.file("bad.txt", "01\n0\n");
    assert_eq!(ptomo(&["xray", &bad, "--dir", "1,0"]).0, 2);
    assert_eq!(ptomo(&["xray", &z, "--dir", "2,2"]).0, 2);
}

#[test]
fn verify_examples() {
    let s = Scratch::new("verify");
    let inst = s.file("i.json", EXAMPLE_1);
    assert_eq!(ptomo(&["verify", &s.file("a.txt", A1), &inst]), (0, "OK\n".into(), String::new()));
    let (code, out, _) = ptomo(&["verify", &s.file("b.txt", "0010\n0101\n0010\n1001\n"), &inst]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL"), "{out}");
    let five = s.file("5.json", r#"{"m":5,"n":5,"p":1,"q":1,"R":[0,0,0,0,0],"C":[0,0,0,0,0]}"#);
    assert_eq!(ptomo(&["verify", &s.file("c.txt", A1), &five]).0, 2);
}

#[test]
fn enumerate_examples() {
    let s = Scratch::new("enum");
    let inst = s.file("i.json", EXAMPLE_1);
    let (code, out, _) = ptomo(&["enumerate", &inst]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("0011\n1001\n0100\n1010\n\n{A1}"));
    let (_, one, _) = ptomo(&["enumerate", &inst, "--limit", "1"]);
    assert_eq!(one.lines().count(), 4);

    let big = s.file("b.json", r#"{"m":7,"n":7,"p":1,"q":1,"R":[0,0,0,0,0,0,0],"C":[0,0,0,0,0,0,0]}"#);
    assert_eq!(ptomo(&["enumerate", &big]).0, 3);
    assert_eq!(ptomo(&["enumerate", &big, "--ceiling", "49"]).0, 0);
    let none = s.file("n.json", r#"{"m":2,"n":2,"p":1,"q":1,"R":[2,0],"C":[1,1]}"#);
    assert_eq!(ptomo(&["enumerate", &none]), (1, "INFEASIBLE\n".into(), String::new()));
}

#[test]
fn gen_examples() {
    let (code, out, _) = ptomo(&["gen", "--m", "4", "--n", "5", "--p", "2", "--q", "1", "--density", "0", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.parse::<BinaryMatrix>().unwrap().is_zero());
    for seed in 0..100 {
        let seed = seed.to_string();
        let args = ["gen", "--m", "6", "--n", "5", "--p", "1", "--q", "2", "--seed", &seed, "--format", "text"];
        let (_, out, _) = ptomo(&args);
        let a: BinaryMatrix = out.parse().unwrap();
        assert!(a.is_periodic(periodic_tomography::Period { p: 1, q: 2 }));
        assert_eq!(ptomo(&args).1, out);
    }
    assert_eq!(ptomo(&["gen", "--m", "0", "--n", "5", "--p", "2", "--q", "1"]).0, 2);
    assert_eq!(ptomo(&["gen", "--m", "3", "--n", "5", "--p", "2", "--q", "1", "--density", "1.5"]).0, 2);
    assert_eq!(ptomo(&["gen", "--m", "3", "--n", "5", "--p", "0", "--q", "0"]).0, 2);
}

#[test]
fn gen_files_round_trip() {
    let s = Scratch::new("gen");
    let (mpath, ipath) = (s.0.join("m.txt"), s.0.join("i.json"));
    let (m, i) = (mpath.to_str().unwrap(), ipath.to_str().unwrap());
    let (code, out, _) = ptomo(&["gen", "--m", "9", "--n", "8", "--p", "3", "--q", "1", "--seed", "5", "--matrix-out", m, "--instance-out", i]);
    assert_eq!(code, 0);
    assert_eq!(out.trim_end(), fs::read_to_string(&ipath).unwrap().trim_end());
    assert_eq!(ptomo(&["verify", m, i]).0, 0);
    let (code, solved, _) = ptomo(&["solve", i]);
    assert_eq!(code, 0);
    assert_eq!(ptomo(&["verify", &s.file("s.txt", &solved), i]).0, 0);
}

#[test]
fn output_is_byte_stable() {
    let s = Scratch::new("stable");
    let inst = s.file("i.json", ROW_PERIOD);
    let first = ptomo(&["solve", &inst]);
    for _ in 0..3 {
        assert_eq!(ptomo(&["solve", &inst]), first);
    }
    let e = s.file("e.json", EXAMPLE_1);
    assert_eq!(ptomo(&["enumerate", &e]), ptomo(&["enumerate", &e]));
}

#[test]
fn bench_prints_a_table() {
    let (code, out, _) = ptomo(&["bench", "--sizes", "10,20", "--p", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.split('\t').count() == 10));
    assert_eq!(ptomo(&["bench", "--sizes", "3", "--p", "3"]).0, 2);
}

#[test]
fn binary_exit_codes_and_stdin() {
    let exe = env!("CARGO_BIN_EXE_ptomo");
    let mut child = Command::new(exe)
        .args(["solve", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(EXAMPLE_1.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);

    let out = Command::new(exe).args(["verify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
