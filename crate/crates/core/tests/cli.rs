use std::process::Command;

use ppgf::cli::run;
use ppgf::omega::p22_via_omega;
use ppgf::recursion::{compute_q_tilde, numerator, Variant};
use ppgf::{FactoredGF, Polynomial};

fn ok(args: &[&str]) -> String {
    let argv = std::iter::once("ppgf").chain(args.iter().copied());
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn verify_reports_every_check() {
    let out = ok(&["verify", "--k", "2", "--degree", "8"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.last(), Some(&"OK"));
    for check in [
        "recursion=oracle",
        "triangulation=recursion",
        "omega=recursion",
        "numerator stabilization",
    ] {
        assert!(
            lines
                .iter()
                .any(|l| l.starts_with(check) && l.ends_with(": ok")),
            "{check}"
        );
    }
}

#[test]
fn counts_table() {
    let out = ok(&["counts", "--max-k", "12"]);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], ["2", "4", "5", "5", "2", "2"]);
    assert_eq!(rows[10], ["12", "24", "90", "90", "208012", "208012"]);
    assert!(out.lines().next().unwrap().contains("nr cones in tri"));
}

#[test]
fn json_output_parses_back() {
    let num =
        Polynomial::from_json(ok(&["numerator", "--k", "3", "--tilde", "--format", "json"]).trim())
            .unwrap();
    assert_eq!(num, numerator(3, Variant::Tilde).unwrap());
    let gf = FactoredGF::from_json(ok(&["gf", "--k", "2", "--tilde", "--format", "json"]).trim())
        .unwrap();
    assert_eq!(gf, compute_q_tilde(2));
    let p22 = FactoredGF::from_json(ok(&["omega-p22", "--format", "json"]).trim()).unwrap();
    assert_eq!(p22, p22_via_omega().unwrap().value);
}

#[test]
fn series_and_oracle_agree() {
    for strict in [false, true] {
        let mut args = vec!["--k", "2", "--degree", "6"];
        if strict {
            args.push("--strict-last");
        }
        let series = ok(&[&["series"], args.as_slice()].concat());
        let oracle = ok(&[&["oracle"], args.as_slice()].concat());
        assert_eq!(series, oracle);
    }
}

#[test]
fn text_outputs() {
    assert_eq!(
        ok(&["numerator", "--k", "2", "--tilde"]),
        "-x1^2*y1*x2 + 1\n"
    );
    assert_eq!(
        ok(&["omega-p22"]),
        "(-x11^2*x12*x21 + 1) / ((1 - x11)*(1 - x11*x12)*(1 - x11*x21)*(1 - x11*x12*x21)*(1 - x11*x12*x21*x22))\n"
    );
    let tri = ok(&["triangulate", "--k", "3"]);
    assert_eq!(tri.lines().filter(|l| l.starts_with("|0")).count(), 5);
    assert!(tri.ends_with(&format!(
        "numerator: {}\n",
        numerator(3, Variant::Tilde).unwrap().to_text()
    )));
    let step = ok(&["ap-step", "--n", "1"]);
    assert!(step.starts_with("(-x11^2*x12*x21 + 1) / "));
}

#[test]
fn deterministic() {
    for args in [
        &["gf", "--k", "3"][..],
        &["triangulate", "--k", "3", "--format", "json"],
        &["ap-step", "--n", "2"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(["ppgf", "frobnicate"]).code, 2);
    assert_eq!(run(["ppgf", "rays"]).code, 2);
    assert_eq!(run(["ppgf", "rays", "--k", "2", "--bogus"]).code, 2);
    assert_eq!(run(["ppgf", "gf", "--k", "6"]).code, 2);
    assert_eq!(run(["ppgf", "counts", "--max-k", "13"]).code, 2);
    assert_eq!(run(["ppgf", "rays", "--k", "0"]).code, 2);
    assert_eq!(run(["ppgf", "--help"]).code, 0);
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_ppgf"))
        .args(["rays", "--k", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        ok(&["rays", "--k", "3"])
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_ppgf"))
        .arg("nope")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
