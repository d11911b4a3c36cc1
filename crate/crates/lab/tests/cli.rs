use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sdepth_lab::commands::{cmd_alpha, cmd_quotient, cmd_sdepth, cmd_verify};
use sdepth_lab::{LabError, OutputFormat, RunConfig};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdepth"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn maximal_ideal_in_five_variables() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.txt"), "x1\nx2\nx3\nx4\nx5\n").unwrap();
    let o = run(dir.path(), &["sdepth", "--input", "m.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("sdepth = 3\n"));
}

#[test]
fn principal_ideal_is_free() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.json"), r#"{"n": 4, "generators": [[1, 2, 0, 1]]}"#).unwrap();
    let o = run(dir.path(), &["sdepth", "--input", "p.json"]);
    assert!(stdout(&o).starts_with("sdepth = 4\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.txt"), "x1\nx0^2\n").unwrap();
    let o = run(d, &["sdepth", "--input", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.txt:2:1"));

    fs::write(d.join("m.txt"), "x1\nx2\n").unwrap();
    fs::write(d.join("j.txt"), "x1\nx2^2\nx3\n").unwrap();
    // J is not inside I
    assert_eq!(run(d, &["quotient", "--input", "m.txt", "--input-j", "j.txt"]).status.code(), Some(2));
    assert_eq!(run(d, &["sdepth", "--input", "missing.txt"]).status.code(), Some(1));
    assert_eq!(run(d, &["sdepth", "--timeout", "0", "--input", "m.txt"]).status.code(), Some(2));
    assert_eq!(run(d, &["verify", "--input", "m.txt"]).status.code(), Some(2));
}

#[test]
fn timeout_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // m^3 in five variables takes several seconds to settle
    let mut text = String::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                for e in 0..=3 - a - b - c {
                    let f = 3 - a - b - c - e;
                    let parts: Vec<String> = [a, b, c, e, f]
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x > 0)
                        .map(|(j, &x)| format!("x{}^{x}", j + 1))
                        .collect();
                    text.push_str(&parts.join("*"));
                    text.push('\n');
                }
            }
        }
    }
    fs::write(d.join("m3.txt"), text).unwrap();
    let o = run(d, &["sdepth", "--input", "m3.txt", "--timeout", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn alpha_matches_golden() {
    let golden = include_str!("golden/alpha_3_2.txt");
    assert_eq!(cmd_alpha(3, 2, OutputFormat::Text).unwrap().summary, golden);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(stdout(&run(dir.path(), &["alpha", "--n", "3", "--k", "2"])), golden);
}

#[test]
fn conjecture_grid_has_twelve_ok_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["conjecture", "--n", "1-4", "--k", "1-3", "--out", "sweep.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,k,alpha_k,sdepth,bound,conjecture_match,status,ms,nodes"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("ok")));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("i.txt"), "x1^2\nx1*x2\nx2^3\n").unwrap();
    let o = run(d, &["quotient", "--input-j", "i.txt", "--out", "cert.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(d, &["verify", "--input", "cert.json"]).status.code(), Some(0));

    let text = fs::read_to_string(d.join("cert.json")).unwrap();
    let dropped = text.replacen("[\n        0,\n        0\n      ]", "[\n        0,\n        1\n      ]", 1);
    assert_ne!(dropped, text);
    fs::write(d.join("bad.json"), dropped).unwrap();
    assert_eq!(run(d, &["verify", "--input", "bad.json"]).status.code(), Some(4));
}

#[test]
fn library_entry_points() {
    let dir = tempfile::tempdir().unwrap();
    let i = dir.path().join("i.txt");
    fs::write(&i, "x1*x2\n").unwrap();
    let cfg = RunConfig {
        input: Some(i.clone()),
        ..RunConfig::default()
    };
    let out = cmd_sdepth(&cfg).unwrap();
    assert!(out.summary.starts_with("sdepth = 2"));
    let cert = dir.path().join("c.json");
    fs::write(&cert, out.document.unwrap()).unwrap();
    cmd_verify(&cert).unwrap();

    // S/(x1*x2) has sdepth 1; a target of 2 is infeasible and yields no document
    let cfg = RunConfig {
        input_j: Some(i),
        target: Some(2),
        ..RunConfig::default()
    };
    let out = cmd_quotient(&cfg).unwrap();
    assert!(out.document.is_none());
    assert!(matches!(cmd_quotient(&RunConfig::default()), Err(LabError::Invalid(_))));
}

#[test]
fn cache_entries_are_revalidated() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("m.txt"), "x1\nx2\nx3\n").unwrap();
    let first = run(d, &["sdepth", "--input", "m.txt", "--cache", "c", "--out", "a.json"]);
    assert_eq!(first.status.code(), Some(0));
    let entry = fs::read_dir(d.join("c")).unwrap().next().unwrap().unwrap().path();
    // corrupt the stored payload; the next run must recompute, not trust it
    let text = fs::read_to_string(&entry).unwrap();
    let corrupted = text.replace("\\\"s\\\": 2", "\\\"s\\\": 3");
    assert_ne!(corrupted, text);
    fs::write(&entry, corrupted).unwrap();
    let second = run(d, &["sdepth", "--input", "m.txt", "--cache", "c", "--out", "b.json"]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read(d.join("a.json")).unwrap(), fs::read(d.join("b.json")).unwrap());
}
