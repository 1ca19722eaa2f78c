use std::io::Write;
use std::process::{Command, Stdio};

use motive_periods::cli::{Analysis, DiscoverOutput, FormulaOutput, VerifyOutput};
use motive_periods::invariant::InvariantPolynomial;
use motive_periods::oracle::VerificationReport;

const M: &str = r#"{"weight":1,"types":[0,1]}"#;
const M2: &str = r#"{"weight":2,"types":[0,1,2],"middle_sign":1}"#;

fn bin(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_motive-periods"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(json: &str) -> T {
    let v: T = serde_json::from_str(json).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    v
}

#[test]
fn motives_from_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, M).unwrap();
    let (code, out, err) = bin(
        &["analyze", "--motive-a", path.to_str().unwrap(), "--motive-b", "-"],
        Some(M2),
    );
    assert_eq!(code, 0, "{err}");
    let a: Analysis = roundtrip(&out);
    assert_eq!(a.k0, Some(2));
    assert_eq!(a.a, Some(vec![2, 1]));
    assert_eq!(a.a_star, Some(vec![2, 1, 0]));

    let (code, _, err) = bin(&["analyze", "--motive-a", "/nonexistent/m.json"], None);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn every_command_round_trips() {
    let pair = ["--motive-a", M, "--motive-b", M2];
    let (code, out, _) = bin(&[&["formula"][..], &pair].concat(), None);
    assert_eq!(code, 0);
    let f: FormulaOutput = roundtrip(&out);
    assert_eq!(f.formulas.len(), 2);

    let (code, out, _) = bin(&[&["verify", "--variant", "ledger"][..], &pair].concat(), None);
    assert_eq!(code, 0);
    let r: VerificationReport = roundtrip(&out);
    assert!(r.constant);

    let (code, out, _) = bin(&[&["verify"][..], &pair].concat(), None);
    assert_eq!(code, 0);
    assert!(matches!(roundtrip::<VerifyOutput>(&out), VerifyOutput::Both(a) if a.constant));

    let (code, out, _) = bin(&[&["ratio"][..], &pair].concat(), None);
    assert_eq!(code, 0);
    roundtrip::<VerificationReport>(&out);

    let (code, out, _) = bin(&[&["discover"][..], &pair].concat(), None);
    assert_eq!(code, 0);
    let d: DiscoverOutput = serde_json::from_str(&out).unwrap();
    assert!(d.discovery.confirmed);
    assert_eq!(serde_json::to_string_pretty(&d).unwrap() + "\n", out);

    let ty =
        r#"{"block_weights":[2,1,1,0],"partition":[1,1,1,1],"right_weights":[1,1],"split":{"d_plus":2,"d_minus":2}}"#;
    let (code, out, _) = bin(&["invariant", "--type", ty], None);
    assert_eq!(code, 0);
    let p: InvariantPolynomial = roundtrip(&out);
    assert_eq!(p.terms.len(), 8);
}

#[test]
fn failures_and_usage_errors() {
    let (code, _, _) = bin(
        &["verify", "--variant", "theorem", "--motive-a", M, "--motive-b", M2],
        None,
    );
    assert_eq!(code, 2);
    let (code, _, err) = bin(&["formula", "--motive-a", M, "--motive-b", M], None);
    assert_eq!(code, 1);
    assert!(err.contains("critical"), "{err}");
    let (code, _, _) = bin(&["verify", "--trials", "many"], None);
    assert_eq!(code, 1);
    let (code, _, _) = bin(&["analyze", "--motive-a", r#"{"weight":2,"types":[0,1,2]}"#], None);
    assert_eq!(code, 1);
}

#[test]
fn text_output() {
    let (code, out, _) = bin(
        &["formula", "--format", "text", "--motive-a", M, "--motive-b", M2],
        None,
    );
    assert_eq!(code, 0);
    assert!(out.contains("[theorem] c+ = δ(M)^1 · c+(M)^1\n"));
    assert!(out.contains("[ledger] c+ = δ(M)^1 · c+(M)^1 · c+(M')^1 · c-(M')^1\n"));
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let args = [
        "verify",
        "--seed",
        "17",
        "--trials",
        "7",
        "--motive-a",
        M,
        "--motive-b",
        M2,
    ];
    let (a, b) = (bin(&args, None), bin(&args, None));
    assert_eq!(a, b);
}
