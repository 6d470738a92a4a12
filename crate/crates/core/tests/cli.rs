//! The `qeuler` binary end to end: output, exit codes, environment.

use std::process::{Command, Output};

fn qeuler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(args)
        .env_remove("QEULER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stats() {
    let o = qeuler(&["stats", "--l", "1", "1 2 3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("fix=3 des=0 maj=0 exc=0 col=0 maf=0 fmaj=0 fmaf=0\n"));
    let o = qeuler(&["stats", "--l", "3", "1 9:1 3 10 5 6 7 4 2 8:2"]);
    assert!(stdout(&o).contains(" maj=29 "));
    let o = qeuler(&["--json", "stats", "--l", "4", "1 8:1 3 4 6 2:2 7 5:1 9"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stats"]["fmaf"], 48);
    assert_eq!(v["der"], "4:1 3 1:2 2:1");
}

#[test]
fn psi() {
    let o = qeuler(&["psi", "--l", "3", "1 9:1 3 10 5 6 7 4 2 8:2"]);
    assert_eq!(stdout(&o), "6:1 8 2 4 5 1 7 3:2 9 10\n");
    let o = qeuler(&["psi", "--l", "1", "1 5 3 4 2 7 6 8"]);
    assert_eq!(stdout(&o), "1 3 2 4 8 6 7 5\n");
    let o = qeuler(&["psi", "--l", "2", "2:1 1"]);
    assert_eq!(stdout(&o), "2:1 1\n");
    let o = qeuler(&["psi", "--l", "3", "--trace", "1 9:1 3 10 5 6 7 4 2 8:2"]);
    let text = stdout(&o);
    assert!(text.contains("Psi<0 1 2 2 2> = <3 3 4 5 5>"), "{text}");
    assert!(text.contains("slot 2 (2, 3): red g=5"), "{text}");
}

#[test]
fn fh() {
    assert_eq!(
        stdout(&qeuler(&["fh", "phi-inv", "02001430"])),
        "02010403\n"
    );
    let o = qeuler(&["fh", "f", "02010403", "--trace"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8, "{text}");
    assert_eq!(lines[7], "02104003");
    let o = qeuler(&["fh", "factorize", "1 5 3 4 2 7 6 8"]);
    assert_eq!(stdout(&o), "1 3 2 4 8 6 7 5\nagreement=true\n");
}

#[test]
fn table() {
    let o = qeuler(&["table", "--l", "3", "--n", "0", "--json"]);
    assert_eq!(
        stdout(&o).split_whitespace().collect::<String>(),
        r#"{"g[0][0]":[[0,0,"1"]]}"#
    );
    let text = stdout(&qeuler(&["table", "--l", "2", "--n", "3"]));
    assert!(text.contains("q+3*q^2+5*q^3+7*q^4+8*q^5+7*q^6+5*q^7+3*q^8+q^9"));
}

#[test]
fn verify() {
    let o = qeuler(&["verify", "thm1", "--l", "1", "--n", "0"]);
    assert!(o.status.success());
    let o = qeuler(&["verify", "haglund", "--l", "2", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[1+3*q+5*q^2+7*q^3+8*q^4+8*q^5+7*q^6+5*q^7+3*q^8+q^9]"));
    let o = qeuler(&["verify", "thm3", "--n", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["checked"], 720);
}

#[test]
fn exit_codes() {
    assert_eq!(
        qeuler(&["stats", "--l", "2", "1 2:5"]).status.code(),
        Some(2)
    );
    let o = qeuler(&["stats", "1 x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 2"));
    assert_eq!(qeuler(&["fh", "phi-inv", "0120"]).status.code(), Some(2));
    assert_eq!(qeuler(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(
        qeuler(&["--budget", "5", "verify", "thm3", "--n", "4"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(["verify", "thm3", "--n", "4"])
        .env("QEULER_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
