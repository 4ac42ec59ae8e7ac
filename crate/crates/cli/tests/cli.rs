use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
const K2: &str = "p edge 2 1\ne 1 2\n";
const CNF: &str = "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stabgraph"));
    c.env_remove("STAB_NODE_BUDGET").env_remove("STAB_TIME_BUDGET_S");
    c
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_c5_chi() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c5.col", C5);
    let o = run(&["analyze", "--xi", "chi", "--json", s(&g)]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["value"], 3);
    assert_eq!(v["verdicts"]["stable"], false);
    assert_eq!(v["verdicts"]["unfrozen"], true);
}

#[test]
fn analyze_expect_sets_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c5.col", C5);
    assert_eq!(code(&run(&["analyze", "--xi", "chi", "--expect", "unfrozen", s(&g)])), 0);
    assert_eq!(code(&run(&["analyze", "--xi", "chi", "--expect", "stable", s(&g)])), 1);
}

#[test]
fn analyze_json_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c5.col", C5);
    let a = run(&["analyze", "--xi", "beta", "--k", "2", "--json", s(&g)]);
    let b = run(&["analyze", "--xi", "beta", "--k", "2", "--json", s(&g)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn beta_gadget_on_triangle() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.col", K3);
    let out = dir.path().join("out.col");
    let o = run(&["gadget", "beta-stabilize", "--edges", "all", "--json", "--out", s(&out), s(&g)]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["input_value"], 2);
    assert_eq!(v["output_value"], 8);
    assert_eq!(v["shift_matches"], true);
    assert!(out.exists());
    let side: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("out.col.provenance.json")).unwrap()).unwrap();
    assert!(side.is_object());
}

#[test]
fn gadget_edge_selector_is_one_based() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.col", K3);
    assert_eq!(code(&run(&["gadget", "two-way", "--edges", "1-2", s(&g)])), 0);
    assert_eq!(code(&run(&["gadget", "chi-stabilize", "--edges", "0-1", s(&g)])), 2);
    assert_eq!(code(&run(&["gadget", "two-way", "--edges", "1-2,2-3", s(&g)])), 2);
}

#[test]
fn reduce_with_verify_writes_graph_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.col", K3);
    let h = file(&dir, "k2.col", K2);
    let out = dir.path().join("s.col");
    let o = run(&["reduce", "compare-vc-to-beta-stability", s(&g), s(&h), "--out", s(&out), "--verify", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_eq!(v["verification"]["premise"], true);
    assert_eq!(v["verification"]["holds"], true);
    assert!(fs::read_to_string(&out).unwrap().contains("p edge"));
    assert!(dir.path().join("s.col.provenance.json").exists());
}

#[test]
fn reduce_formula_pipeline() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "f.cnf", CNF);
    let out = dir.path().join("g.col");
    let o = run(&["reduce", "stable3cnf-to-vertex-stability", s(&f), "--out", s(&out), "--verify", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o)["verification"]["holds"], true);
}

#[test]
fn reduce_rejects_wrong_arity() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.col", K3);
    let out = dir.path().join("x.col");
    assert_eq!(code(&run(&["reduce", "compare-vc-to-beta-stability", s(&g), "--out", s(&out)])), 2);
    let f = file(&dir, "f.cnf", CNF);
    assert_eq!(code(&run(&["reduce", "compare-colorability", s(&f), s(&f), "--out", s(&out)])), 2);
}

#[test]
fn formula_constructions() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "f.cnf", CNF);
    let o = run(&["formula", "stability", "--json", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["satisfiable"], true);
    let out = dir.path().join("p.cnf");
    assert_eq!(code(&run(&["formula", "unsat-padding", s(&f), "--out", s(&out)])), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("p cnf"));
    assert_eq!(code(&run(&["formula", "or2", s(&f)])), 2);
}

#[test]
fn verify_single_law_is_deterministic() {
    let args = ["verify", "prop1.1", "--max-n", "4", "--samples", "20", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["passed"], true);
    assert!(v["reports"][0].get("elapsed_ms").is_none());
}

#[test]
fn verify_list_names_laws() {
    let o = run(&["verify", "--list", "--json"]);
    assert_eq!(code(&o), 0);
    let ids: Vec<String> = json_of(&o).as_array().unwrap().iter().map(|l| l["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.iter().any(|i| i == "thm9.end2end"));
}

#[test]
fn bad_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.col", "p edge 2 1\ne 1 3\n");
    assert_eq!(code(&run(&["analyze", "--xi", "chi", s(&bad)])), 2);
    assert_eq!(code(&run(&["analyze", "--xi", "chi", "/nonexistent/graph.col"])), 2);
    assert_eq!(code(&run(&["verify", "no-such-law"])), 2);
    assert_eq!(code(&run(&["analyze", "--xi", "gamma", s(&bad)])), 2);
}

#[test]
fn node_budget_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c5.col", C5);
    let o = bin().env("STAB_NODE_BUDGET", "1").args(["analyze", "--xi", "chi", s(&g)]).output().unwrap();
    assert_eq!(code(&o), 3);
    let o = bin().env("STAB_NODE_BUDGET", "lots").args(["analyze", "--xi", "chi", s(&g)]).output().unwrap();
    assert_eq!(code(&o), 2);
}
