use std::path::Path;
use std::process::{Command, Output};

fn pgdir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgdir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn kiss_somlai_file_has_three_special_directions() {
    let dir = tempfile::tempdir().unwrap();
    let ks = path(dir.path(), "ks7.txt");
    let o = pgdir(&["bridge", "kiss-somlai", "--p", "7", "-o", &ks]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("special directions: 3"));
    let o = pgdir(&["directions", "spectrum", &ks]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("special directions: 3 [0, 1, inf]"), "{out}");
    assert!(out.contains("size 21"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pgdir(&["directions", "spectrum"]).status.code(), Some(2));
    assert_eq!(pgdir(&["directions", "spectrum", "/nonexistent/m.txt"]).status.code(), Some(2));
    assert_eq!(pgdir(&["plane", "dump", "--q", "6"]).status.code(), Some(2));
    assert_eq!(pgdir(&["verify", "--criterion", "13"]).status.code(), Some(2));
    assert_eq!(pgdir(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    // the four-line closed form needs p > 3
    assert_eq!(pgdir(&["bridge", "four-dir", "--p", "3"]).status.code(), Some(1));
    assert_eq!(pgdir(&["search", "ks5", "--p", "7"]).status.code(), Some(1));
}

#[test]
fn set_code_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (g, word, comb, ms) = (
        path(dir.path(), "g.txt"),
        path(dir.path(), "w.txt"),
        path(dir.path(), "comb.txt"),
        path(dir.path(), "ms.txt"),
    );
    let o = pgdir(&["code", "odd-gen", "--p", "7", "--slopes", "0,1", "--G", "Z", "-o", &g]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd on its frame: true"));
    assert!(pgdir(&["bridge", "decompose", &g, "-o", &comb]).status.success());
    let o = pgdir(&["bridge", "code2set", &comb, "--slopes", "0,inf,-1", "-o", &ms]);
    assert!(o.status.success());
    let o = pgdir(&["bridge", "set2code", &ms, "--word", &word]);
    assert!(o.status.success());
    let o = pgdir(&["code", "check", &word]);
    let out = stdout(&o);
    assert!(out.contains("member (span): true") && out.contains("member (polynomial): true"));
}

#[test]
fn classify_labels_odd_word_on_four_lines() {
    let dir = tempfile::tempdir().unwrap();
    let w = path(dir.path(), "w.txt");
    let o = pgdir(&["code", "odd-gen", "--p", "7", "--slopes", "0,1,-1", "--G", "Z^2+X*Y", "-o", &w]);
    assert!(o.status.success());
    let o = pgdir(&["search", "classify", &w]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("label: odd codeword on 4 lines"), "{out}");
    assert!(out.contains("witness verified: true"));
}

#[test]
fn output_is_reproducible_and_echoes_config() {
    let args = ["search", "case2", "--p", "7", "--samples", "30", "--seed", "11"];
    let a = pgdir(&args);
    let b = pgdir(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("# pgdir "));
    assert!(out.lines().nth(1).unwrap().contains("seed: 11"));
}

#[test]
fn verify_single_criterion() {
    let o = pgdir(&["verify", "--criterion", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS  1 matrix identity"));
}

#[test]
fn plane_dump_lists_every_point_and_line() {
    let o = pgdir(&["plane", "dump", "--q", "3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("P ")).count(), 13);
    assert_eq!(out.lines().filter(|l| l.starts_with("L ")).count(), 13);
}
