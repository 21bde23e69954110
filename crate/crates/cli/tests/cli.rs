use std::process::{Command, Output};

use parity_forge::verify::Report;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity-forge"))
        .args(args)
        .env_remove("PARITY_FORGE_ORDER")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn expand_examples() {
    assert_eq!(
        stdout(&run(&["expand", "f2^4/f1^5", "--order", "3"])),
        "1 5 16 45\n"
    );
    assert_eq!(
        stdout(&run(&["expand", "f1", "--order", "7"])),
        "1 -1 -1 0 0 1 0 1\n"
    );
    assert_eq!(
        stdout(&run(&["expand", "f1^2/f2", "--order", "4", "--mod", "3"])),
        "1 1 0 0 2\n"
    );
    assert_eq!(
        stdout(&run(&["expand", "D(q)", "-N", "4", "-m", "3"])),
        "1 1 0 0 2\n"
    );
}

#[test]
fn parse_errors_exit_2_with_caret() {
    let out = run(&["expand", "f2^4 / g1", "-N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("f2^4 / g1\n       ^"), "{err}");

    let out = run(&["check", "ak=5 A=5 B=3 mod=x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("                 ^"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["suite", "no_such_suite"]).status.code(), Some(2));
    assert_eq!(run(&["check", "ak=5 A=0 B=3 mod=5"]).status.code(), Some(2));
    assert_eq!(run(&["check", "ak=5 A=5 B=3 mod=1"]).status.code(), Some(2));
    assert_eq!(run(&["ak", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["suite", "all", "--params", "t=0..9"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_exit_codes() {
    let pass = run(&["check", "ak=5 A=5 B=3 mod=5", "--order", "500"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).contains("PASS"));

    let fail = run(&["check", "ak=5 A=5 B=2 mod=5", "--order", "500"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("FAIL"));

    let internal = run(&[
        "check",
        "internal ak=5 lhs=27,10 rhs=3,1 mod=3",
        "--order",
        "2000",
    ]);
    assert_eq!(internal.status.code(), Some(0));
    let mutant = run(&[
        "check",
        "internal ak=5 lhs=27,10 rhs=3,2 mod=3",
        "--order",
        "2000",
    ]);
    assert_eq!(mutant.status.code(), Some(1));
}

#[test]
fn json_reports_round_trip_and_match_text() {
    let json_out = run(&["suite", "thm_4_1", "--order", "800", "--format", "json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let reports: Vec<Report> = value
        .as_array()
        .unwrap()
        .iter()
        .map(|v| Report::from_json(v).unwrap())
        .collect();
    assert_eq!(reports.len(), 9);
    for (r, v) in reports.iter().zip(value.as_array().unwrap()) {
        let mut again = r.to_json();
        again["elapsed_ms"] = v["elapsed_ms"].clone();
        assert_eq!(&again, v);
    }

    let text = stdout(&run(&["suite", "thm_4_1", "--order", "800"]));
    for r in &reports {
        let row = text.lines().find(|l| l.starts_with(&r.id)).unwrap();
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[1], "PASS");
        assert_eq!(cols[2], r.order_used.to_string());
        assert_eq!(cols[3], r.range_checked.to_string());
    }
}

#[test]
fn text_json_and_csv_agree_on_coefficients() {
    let text = stdout(&run(&["ak", "26", "-N", "60"]));
    let json: Value =
        serde_json::from_str(&stdout(&run(&["ak", "26", "-N", "60", "--format", "json"]))).unwrap();
    let csv = stdout(&run(&["ak", "26", "-N", "60", "--format", "csv"]));
    let from_text: Vec<String> = text
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    let from_json: Vec<String> = json["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let from_csv: Vec<String> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(from_text.len(), 61);
    assert_eq!(from_text, from_json);
    assert_eq!(from_text, from_csv);
    // Exact decimals, never exponent notation.
    assert!(from_text.last().unwrap().len() > 20);
    assert!(from_text
        .iter()
        .all(|c| c.chars().all(|ch| ch.is_ascii_digit())));
}

#[test]
fn dissect_reads_and_writes_series_files() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("series.txt");
    let dst = dir.path().join("part.txt");
    let out = run(&["ak", "5", "-N", "30", "--out", src.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "dissect",
        "--in",
        src.to_str().unwrap(),
        "-m",
        "3",
        "-r",
        "2",
        "--out",
        dst.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let part =
        parity_forge::series::parse_series_text(&std::fs::read_to_string(&dst).unwrap()).unwrap();
    let full = parity_forge::colored::ak_series(5, 30);
    assert_eq!(part.order(), 9);
    for n in 0..=9 {
        assert_eq!(part.coeffs()[n], full.coeffs()[3 * n + 2]);
    }

    let reduced = stdout(&run(&[
        "dissect",
        "--in",
        src.to_str().unwrap(),
        "-m",
        "5",
        "-r",
        "3",
        "--mod",
        "5",
    ]));
    assert!(reduced.lines().all(|l| l.ends_with("\t0")), "{reduced}");

    std::fs::write(&src, "0\t1\n1\tx\n").unwrap();
    let bad = run(&[
        "dissect",
        "--in",
        src.to_str().unwrap(),
        "-m",
        "3",
        "-r",
        "0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn order_env_var_sets_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_parity-forge"))
        .args(["expand", "f1"])
        .env("PARITY_FORGE_ORDER", "5")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 -1 -1 0 0 1\n");
}
