use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qstring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qstring(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &[u8]) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn factorize_examples() {
    let dir = TempDir::new().unwrap();
    let sample = write(&dir, "sample", b"abacabcabcaaaab");
    let out = dir.path().join("sample.jsonl");
    let out_s = out.to_str().unwrap();
    assert_eq!(
        stdout(&["factorize", &sample, "--algo", "lz77", "--out", out_s]),
        "8\n"
    );
    let lines = fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 9, "header plus one line per phrase");
    let ledger = fs::read_to_string(format!("{out_s}.ledger.csv")).unwrap();
    assert!(ledger.starts_with("tag,count\n") && ledger.contains("\ntotal,"));

    let empty = write(&dir, "empty", b"");
    assert_eq!(stdout(&["factorize", &empty]), "0\n");
    let end = write(&dir, "end", b"00010011011");
    assert_eq!(
        stdout(&["factorize", &end, "--algo", "lzend-tau", "--tau", "2"]),
        "8\n"
    );
    assert_eq!(stdout(&["factorize", &end, "--algo", "lzend"]), "7\n");
}

#[test]
fn index_build_and_query() {
    let dir = TempDir::new().unwrap();
    let banana = write(&dir, "banana", b"banana");
    let other = write(&dir, "other", b"bandana");
    let bundle = dir.path().join("idx");
    let b = bundle.to_str().unwrap();
    assert_eq!(stdout(&["index", "build", &banana, "--out", b]), "6\t5\n");
    let q = |args: &[&str]| {
        let mut full = vec!["index", "query", b];
        full.extend_from_slice(args);
        stdout(&full)
    };
    assert_eq!(q(&["count", "ana"]), "2\n");
    assert_eq!(q(&["locate", "ana"]), "2\n4\n");
    assert_eq!(q(&["sa", "1"]), "7\n");
    assert_eq!(q(&["isa", "7"]), "1\n");
    assert_eq!(q(&["lyndon"]), "1\t2\t4\t6\n");
    assert_eq!(
        q(&["qgrams", "3"]),
        "4\t97,110,97\t2\n1\t98,97,110\t1\n3\t110,97,110\t1\n"
    );
    assert_eq!(q(&["lcs", &other]), "lcs\t1\t1\t3\n");
    let mums = q(&["mum", &other]);
    assert!(mums.lines().all(|l| l.starts_with("mum\t")));
}

#[test]
fn missing_bundle_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope");
    let out = qstring(&["index", "query", missing.to_str().unwrap(), "count", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        qstring(&["factorize", "/definitely/not/here"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qstring(&["factorize", "--no-such-flag"]).status.code(),
        Some(2)
    );
    let f = write(&dir, "f", b"abc");
    assert_eq!(
        qstring(&["factorize", &f, "--algo", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn edit_distance_command() {
    let dir = TempDir::new().unwrap();
    let kitten = write(&dir, "kitten", b"kitten");
    let sitting = write(&dir, "sitting", b"sitting");
    let empty = write(&dir, "empty", b"");
    assert_eq!(stdout(&["ed", &kitten, &kitten]), "0\n");
    assert_eq!(stdout(&["ed", &kitten, &sitting]), "3\n");
    assert_eq!(stdout(&["ed", &empty, &sitting]), "7\n");
    let with_script = stdout(&["ed", &kitten, &sitting, "--script"]);
    let mut lines = with_script.lines();
    assert_eq!(lines.next(), Some("3"));
    assert_eq!(lines.count(), 3, "one edit per line");
}

fn bench_csv(dir: &Path, name: &str, extra: &[&str]) -> String {
    let out = dir.join(name);
    let mut args = vec!["bench", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    stdout(&args);
    fs::read_to_string(out).unwrap()
}

#[test]
fn bench_rows_and_determinism() {
    let dir = TempDir::new().unwrap();
    let sizes = ["--suite", "lz", "--sizes", "2^10,2^11,2^12", "--seed", "7"];
    let a = bench_csv(dir.path(), "a.csv", &sizes);
    let mut seq = sizes.to_vec();
    seq.push("--sequential");
    let b = bench_csv(dir.path(), "b.csv", &seq);
    assert_eq!(a, b, "fixed seed gives identical CSV in both modes");
    let rows: Vec<&str> = a.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let ledger: Vec<u64> = rows
        .iter()
        .map(|r| r.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    assert!(ledger.windows(2).all(|w| w[0] <= w[1]), "{ledger:?}");

    let ed = bench_csv(
        dir.path(),
        "ed.csv",
        &["--suite", "ed", "--sizes", "256,512", "--k", "0"],
    );
    for row in ed.lines().skip(1) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[5], "0", "distance column");
    }
    assert_eq!(
        qstring(&["bench", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn ledger_flag_dumps_accounting() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x", b"abracadabra");
    let y = write(&dir, "y", b"abracadabro");
    let ledger = dir.path().join("ledger.csv");
    let l = ledger.to_str().unwrap();
    assert_eq!(stdout(&["--ledger", l, "ed", &x, &y]), "1\n");
    let csv = fs::read_to_string(&ledger).unwrap();
    let total: u64 = csv
        .lines()
        .find_map(|r| r.strip_prefix("total,"))
        .unwrap()
        .parse()
        .unwrap();
    assert!(total > 0);
    let rep = dir.path().join("rep.csv");
    stdout(&[
        "--ledger",
        rep.to_str().unwrap(),
        "--repetition-factor",
        "3",
        "factorize",
        &x,
    ]);
    assert!(fs::read_to_string(rep).unwrap().contains("total,"));
}
