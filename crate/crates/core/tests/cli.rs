use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use slpx::slp::to_text;
use slpx::testing::{fibonacci, grammar_b};
use tempfile::TempDir;

fn slpx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slpx")).args(args).output().expect("spawn slpx")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, body: impl AsRef<[u8]>) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn encode(dir: &TempDir, slp: &Path, scheme: &str) -> (PathBuf, Value) {
    let out = dir.path().join(format!("g.{scheme}.slpx"));
    let o = slpx(&["encode", "--scheme", scheme, s(slp), s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (out, serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn compress_reports_sizes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "abab");
    let out = dir.path().join("t.slp");
    let o = slpx(&["compress", s(&input), s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("N=4"));
    let slp = slpx::slp::parse_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(slp.text(), b"abab");
}

#[test]
fn compress_rejects_empty_input() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "e.txt", "");
    assert_eq!(code(&slpx(&["compress", s(&input), s(&dir.path().join("e.slp"))])), 2);
}

#[test]
fn encode_prints_the_space_report() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "b.slp", to_text(&grammar_b()));
    let (_, r) = encode(&dir, &g, "I");
    assert_eq!(r["core_bits"], 42);
    assert_eq!(r["formula_holds"], true);
    let (_, r) = encode(&dir, &g, "III");
    assert_eq!(r["components"]["S"], 4);
    let (c, _) = encode(&dir, &g, "II");
    let o = slpx(&["stats", s(&c)]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["components"]["M_E"], 6);
    assert_eq!(r["components"]["T_E"], 5);
}

#[test]
fn encode_rejects_a_cyclic_grammar() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c.slp", "SLP 2 1 1\nALPHABET 97\n2 3\n1 3\n");
    assert_eq!(code(&slpx(&["encode", "--scheme", "I", s(&g), s(&dir.path().join("c.slpx"))])), 2);
}

#[test]
fn extract_prints_the_range() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "b.slp", to_text(&grammar_b()));
    let (c, _) = encode(&dir, &g, "I");
    let o = slpx(&["extract", s(&c), "--pos", "2", "--len", "3", "--stats"]);
    assert_eq!(code(&o), 0);
    assert_eq!(o.stdout, b"aaa");
    let st: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(st["non_sc_hops"], 3);
    assert_eq!(code(&slpx(&["extract", s(&c), "--pos", "5", "--len", "2"])), 2);
    assert_eq!(code(&slpx(&["extract", s(&c), "--pos", "0", "--len", "1"])), 2);
}

#[test]
fn verify_detects_a_damaged_container() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "f.slp", to_text(&fibonacci(8)));
    for scheme in ["I", "II", "III"] {
        let (c, _) = encode(&dir, &g, scheme);
        assert_eq!(code(&slpx(&["verify", s(&c), "--against", s(&g), "--full"])), 0);
        assert_eq!(code(&slpx(&["verify", s(&c), "--against", s(&g), "--samples", "20", "--seed", "3"])), 0);
        let mut bytes = std::fs::read(&c).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        let bad = write(&dir, "bad.slpx", bytes);
        assert_eq!(code(&slpx(&["verify", s(&bad), "--against", s(&g), "--full"])), 1);
    }
    let other = write(&dir, "b.slp", to_text(&grammar_b()));
    let (c, _) = encode(&dir, &other, "I");
    assert_eq!(code(&slpx(&["verify", s(&c), "--against", s(&g), "--full"])), 1);
}

#[test]
fn stats_rejects_unknown_files() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "x.slpx", "NOPE and some more bytes");
    assert_eq!(code(&slpx(&["stats", s(&junk)])), 2);
    assert_eq!(code(&slpx(&["stats", s(&dir.path().join("missing"))])), 2);
}
