use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn radiuskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radiuskit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "a b\na c\na d\nb c\nb d\nc d\n";
const K33: &str = "x1 y1\nx1 y2\nx1 y3\nx2 y1\nx2 y2\nx2 y3\nx3 y1\nx3 y2\nx3 y3\n";

#[test]
fn ak_prints_table_value_and_cycle() {
    let o = radiuskit(&["ak", "--k", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("a_4 = 4/3"), "{out}");
    assert!(out.contains("000111"), "{out}");
}

#[test]
fn ak_json_edges_sum_to_weight() {
    let o = radiuskit(&["ak", "--k", "5", "--cycle", "--format", "json"]);
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["a_k"], "7/4");
    let total: u64 = rec["edges"].as_array().unwrap().iter().map(|e| e["weight"].as_u64().unwrap()).sum();
    assert_eq!(total, rec["weight"].as_u64().unwrap());
    assert_eq!(rec["length"], 8);
}

#[test]
fn wk_small_value() {
    let o = radiuskit(&["wk", "--k", "2", "--s", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "w_2(5) = 4");
    let j = radiuskit(&["wk", "--k", "2", "--s", "5", "--method", "brute", "--format", "json"]);
    assert_eq!(json_lines(&j)[0]["w_k"], 4);
}

#[test]
fn zk_reports_twelve_digit_bound() {
    let out = stdout(&radiuskit(&["zk", "--k", "4"]));
    assert!(out.contains("z_4 = 4/3 (t = 3)"), "{out}");
    assert!(out.contains("lower bound = 0.898979485566"), "{out}");
}

#[test]
fn table2_is_byte_stable() {
    let a = radiuskit(&["table2"]);
    let b = radiuskit(&["table2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("4  4/3  (000111)*"), "{out}");
    assert!(out.contains("(00011)*") && out.contains("(00111)*"), "{out}");
}

#[test]
fn conjecture_sweep_json() {
    let rows = json_lines(&radiuskit(&["conjecture", "--max-k", "6", "--format", "json"]));
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert_eq!(r["lower_holds"], true);
        assert_eq!(r["equal"], true);
    }
}

#[test]
fn verify_radius_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.edges", K4);
    let good = write(&dir, "s.txt", "a b c d a\n");
    let o = radiuskit(&["verify", "radius", "--k", "2", "--graph", s(&g), "--seq", s(&good)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = radiuskit(&["verify", "radius", "--k", "1", "--graph", s(&g), "--seq", s(&good)]);
    assert_eq!(code(&o), 1);
    let cyc = write(&dir, "c.txt", "a b c d\n");
    let o = radiuskit(&["verify", "radius", "--k", "2", "--graph", s(&g), "--seq", s(&cyc), "--cyclic"]);
    assert_eq!(code(&o), 0);
    let o = radiuskit(&["verify", "radius", "--k", "2", "--graph", s(&g), "--seq", s(&cyc)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn errors_name_line_and_flag() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.edges", K4);
    let seq = write(&dir, "s.txt", "a b\nc z\n");
    let o = radiuskit(&["verify", "radius", "--k", "2", "--graph", s(&g), "--seq", s(&seq)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--seq") && err.contains("line 2"), "{err}");

    let bad = write(&dir, "bad.edges", "a b\nb b\n");
    let o = radiuskit(&["bounds", "--k", "1", "--graph", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--graph") && err.contains("line 2"), "{err}");

    assert_eq!(code(&radiuskit(&["ak"])), 2);
    assert_eq!(code(&radiuskit(&["wk", "--k", "2", "--s", "5", "--method", "nope"])), 2);
}

#[test]
fn verify_cover_structure_error() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.edges", K4);
    let ok = write(&dir, "ok.txt", "a b c\na b d\na c d\n");
    assert_eq!(code(&radiuskit(&["verify", "cover", "--k", "2", "--graph", s(&g), "--seq", s(&ok)])), 0);
    let jump = write(&dir, "jump.txt", "a b c\nb c d\nd a b\n");
    let o = radiuskit(&["verify", "cover", "--k", "1", "--graph", s(&g), "--seq", s(&jump)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("set 1"));
}

#[test]
fn bounds_bipartite_requirement() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.edges", K4);
    assert_eq!(code(&radiuskit(&["bounds", "--k", "1", "--graph", s(&k4), "--bipartite"])), 1);
    let k33 = write(&dir, "k33.edges", K33);
    let rec = &json_lines(&radiuskit(&["bounds", "--k", "2", "--graph", s(&k33), "--bipartite", "--format", "json"]))[0];
    // 9 / (2 - 1/2)
    assert_eq!(rec["cor1"], "6");
}

#[test]
fn constructed_sequences_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = radiuskit(&["construct", "bipartite", "--k", "2", "--m", "5", "--n", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rec = &json_lines(&o)[0];
    let seq = write(&dir, "seq.txt", rec["sequence"].as_str().unwrap());
    let mut edges = String::new();
    for i in 1..=5 {
        for j in 1..=4 {
            edges.push_str(&format!("x{i} y{j}\n"));
        }
    }
    let g = write(&dir, "k54.edges", &edges);
    assert_eq!(code(&radiuskit(&["verify", "radius", "--k", "2", "--graph", s(&g), "--seq", s(&seq)])), 0);

    // Human output is itself a valid sequence file: headers are comments.
    let human = stdout(&radiuskit(&["construct", "cover-bipartite", "--k", "2", "--m", "5", "--n", "4"]));
    let cov = write(&dir, "cov.txt", &human);
    assert_eq!(code(&radiuskit(&["verify", "cover", "--k", "2", "--graph", s(&g), "--seq", s(&cov)])), 0);

    let euler = stdout(&radiuskit(&["construct", "euler1", "--graph", s(&g)]));
    let e = write(&dir, "e.txt", &euler);
    assert_eq!(code(&radiuskit(&["verify", "radius", "--k", "1", "--graph", s(&g), "--seq", s(&e)])), 0);
}

#[test]
fn exact_solvers() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.edges", K4);
    let rec = &json_lines(&radiuskit(&["exact", "fk", "--k", "2", "--graph", s(&g), "--format", "json"]))[0];
    assert_eq!(rec["optimum"], 5);
    let rec = &json_lines(&radiuskit(&["exact", "ck", "--k", "2", "--graph", s(&g), "--format", "json"]))[0];
    assert_eq!(rec["optimum"], 5);
    let rec = &json_lines(&radiuskit(&["exact", "maxcut", "--graph", s(&g), "--format", "json"]))[0];
    assert_eq!(rec["maxcut"], 4);
    assert_eq!(code(&radiuskit(&["exact", "fk", "--graph", s(&g)])), 2);
}

#[test]
fn maxcut_circulant_checks() {
    let o = radiuskit(&["maxcut", "circulant", "--n", "5", "--k", "2", "--brute-check"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("mc(C_5^2) = 6") && out.contains("agrees"), "{out}");
    assert_eq!(code(&radiuskit(&["maxcut", "circulant", "--n", "4", "--k", "2"])), 2);
}

#[test]
fn hamiltonian_reduction_files() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k33.edges", K33);
    let w = write(&dir, "hp.txt", "x1 y1 x2 y2 x3 y3\n");
    let prefix = dir.path().join("inst");
    let o = radiuskit(&[
        "reduce", "ham-radius", "--k", "3", "--graph", s(&f), "--witness", s(&w), "--out", s(&prefix),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let edges = dir.path().join("inst.edges");
    let seq = dir.path().join("inst.seq");
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("inst.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["threshold"], 19);
    assert_eq!(meta["sequence_length"], 19);
    assert_eq!(code(&radiuskit(&["verify", "radius", "--k", "3", "--graph", s(&edges), "--seq", s(&seq)])), 0);

    let not_path = write(&dir, "np.txt", "x1 x2 y1 y2 x3 y3\n");
    assert_eq!(code(&radiuskit(&["reduce", "ham-radius", "--k", "3", "--graph", s(&f), "--witness", s(&not_path)])), 1);
}

#[test]
fn cover_reduction_files() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "k3.edges", "a b\nb c\nc a\n");
    let w = write(&dir, "order.txt", "a b\nb c\nc a\n");
    let prefix = dir.path().join("cov");
    let o = radiuskit(&[
        "reduce", "cover1-coverk", "--k", "2", "--graph", s(&h), "--witness", s(&w), "--out", s(&prefix),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("cov.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["target_length"], 26);
    assert_eq!(meta["loss"], 2);
    let edges = dir.path().join("cov.edges");
    let seq = dir.path().join("cov.seq");
    assert_eq!(code(&radiuskit(&["verify", "cover", "--k", "2", "--graph", s(&edges), "--seq", s(&seq)])), 0);
}

#[test]
fn thread_cap_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_radiuskit"))
        .args(["wk", "--k", "3", "--s", "14"])
        .env("RADIUSKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(code(&radiuskit(&["--threads", "1", "wk", "--k", "3", "--s", "14"])), 0);
    assert_eq!(code(&radiuskit(&["--threads", "0", "wk", "--k", "3", "--s", "14"])), 2);
}
