use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const P1: &str = "P(1,11,2,10) P(2,9,3,10) P(3,14,4,1) P(8,14,9,13) P(4,8,5,7) P(5,13,6,12) P(6,11,7,12)";
const P2: &str = "P(1,11,2,10) P(2,9,3,10) P(8,12,9,11) P(7,14,8,1) P(3,6,4,7) P(4,13,5,14) P(5,13,6,12)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoknot"))
        .args(args)
        .env_remove("PSEUDOKNOT_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn invariant_of_kink_and_trefoil() {
    let dir = TempDir::new().unwrap();
    let kink = write(&dir, "kink.pd", "P(1,2,2,1)\n");
    assert_eq!(stdout(&run(&["i", &kink])), "empty\n");
    let tref = write(&dir, "tref.gauss", "Ph1,Pt2,Ph3,Pt1,Ph2,Pt3\n");
    let out = stdout(&run(&["i", &tref]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(" 0")));
}

#[test]
fn named_pair_differs_in_invariant_only() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (write(&dir, "p1.pd", P1), write(&dir, "p2.pd", P2));
    let hex = |p: &str| {
        let v: serde_json::Value = serde_json::from_slice(&run(&["--format", "json", "i", p]).stdout).unwrap();
        v["canonical"].as_str().unwrap().to_string()
    };
    assert_ne!(hex(&a), hex(&b));
    let braces = stdout(&run(&["--format", "paper", "wereset", &a]));
    assert!(braces.starts_with("{{0_1,72},{-3_1,10},{3_1,10},{4_1,20},"));
    assert_eq!(braces, stdout(&run(&["--format", "paper", "wereset", &b])));
}

#[test]
fn wereset_output_ignores_worker_count() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p1.pd", P1);
    for fmt in ["text", "json", "paper"] {
        let one = run(&["--format", fmt, "--workers", "1", "wereset", &a]);
        let eight = run(&["--format", fmt, "--workers", "8", "wereset", &a]);
        assert!(one.status.success());
        assert_eq!(one.stdout, eight.stdout);
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.pd", "P(1,2,3)");
    assert_eq!(run(&["i", &bad]).status.code(), Some(2));
    assert_eq!(run(&["i", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--m", "3", "--n", "2", "--out", dir.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["--workers", "0", "table"]).status.code(), Some(2));
    let tref = write(&dir, "t.pd", "P(1,5,2,4) P(3,1,4,6) P(5,3,6,2)");
    assert_eq!(run(&["jones", &tref]).status.code(), Some(2));
}

#[test]
fn family_writes_pair_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fam");
    let o = run(&["family", "--m", "2", "--n", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out.join("first.pd")).unwrap().trim(), P1);
    assert_eq!(fs::read_to_string(out.join("second.pd")).unwrap().trim(), P2);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["site"]["crossing"], 3);
    // The manifest site reproduces the second diagram.
    let site = write(&dir, "site.json", &manifest["site"].to_string());
    let flyped = stdout(&run(&["flype", out.join("first.pd").to_str().unwrap(), "--site", &site]));
    assert_eq!(flyped.trim(), P2);
}

#[test]
fn resolve_then_jones() {
    let dir = TempDir::new().unwrap();
    let tref = write(&dir, "t.pd", "P(1,5,2,4) P(3,1,4,6) P(5,3,6,2)");
    let resolved = stdout(&run(&["resolve", &tref, "--choices", "+++"]));
    let r = write(&dir, "r.pd", &resolved);
    let out = stdout(&run(&["jones", &r]));
    assert!(out.ends_with("3_1\n"), "{out}");
    assert_eq!(run(&["resolve", &tref, "--choices", "++"]).status.code(), Some(2));
}

#[test]
fn scramble_is_reproducible_and_keeps_the_invariant() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p1.pd", P1);
    let s1 = stdout(&run(&["scramble", &a, "--seed", "9", "--steps", "30"]));
    assert_eq!(s1, stdout(&run(&["scramble", &a, "--seed", "9", "--steps", "30"])));
    let g = write(&dir, "s.gauss", &s1);
    assert_eq!(run(&["i", &g]).stdout, run(&["i", &a]).stdout);
}

#[test]
fn render_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p1.pd", P1);
    let svg = |name: &str| {
        let out = dir.path().join(name);
        assert!(run(&["render", &a, "--out", out.to_str().unwrap()]).status.success());
        fs::read(out).unwrap()
    };
    let first = svg("a.svg");
    assert_eq!(first, svg("b.svg"));
    assert!(String::from_utf8(first).unwrap().starts_with("<svg"));
}

#[test]
fn table_override_from_environment() {
    let dir = TempDir::new().unwrap();
    let table = stdout(&run(&["table"]));
    assert_eq!(table.lines().filter(|l| !l.starts_with('#')).count(), 27);
    // A table without trefoils leaves those resolutions unclassified.
    let small: String = table.lines().filter(|l| !l.contains("3_1 ")).map(|l| format!("{l}\n")).collect();
    let path = write(&dir, "small.txt", &small);
    let tref = write(&dir, "t.pd", "P(1,5,2,4) P(3,1,4,6) P(5,3,6,2)");
    let o = Command::new(env!("CARGO_BIN_EXE_pseudoknot"))
        .args(["--format", "paper", "wereset", &tref])
        .env("PSEUDOKNOT_TABLE", &path)
        .output()
        .unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("{{0_1,6},{?"), "{text}");
    assert!(Path::new(&path).exists());
}

#[test]
fn check_reports_a_summary() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p1.pd", P1);
    let v: serde_json::Value = serde_json::from_slice(&run(&["--format", "json", "check", &a]).stdout).unwrap();
    assert_eq!(v["precrossings"], 7);
    assert_eq!(v["shadow"], true);
    assert_eq!(v["even"], true);
}
