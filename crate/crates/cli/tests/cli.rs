//! The installed binary: exit codes, diagnostics and JSON shape.

use std::path::{Path, PathBuf};
use std::process::Command;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fiberideals"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fiberideals-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn example_fibers_as_json() {
    let p = golden("monomial.problem");
    let (code, out, _) = bin(&[
        p.to_str().unwrap(),
        "fiber",
        "--at",
        "q",
        "--kind",
        "all",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["row"], serde_json::json!(["b", "c"]));
    assert_eq!(
        v["results"]["correspondence"],
        serde_json::json!(["a^2", "b", "c"])
    );
    assert_eq!(v["results"]["morphism"], serde_json::json!({"unit": true}));
    assert_eq!(v["flags"]["confirmed"], true);
    assert!(out.contains("\"row\": [\n      \"b\",\n      \"c\"\n    ]"));
}

#[test]
fn strict_flags_unconfirmed_chains() {
    let p = golden("monomial.problem");
    let p = p.to_str().unwrap();
    let (code, _, _) = bin(&[
        p,
        "fiber",
        "--at",
        "q",
        "--kind",
        "corr",
        "--max-power",
        "3",
        "--strict",
    ]);
    assert_eq!(code, 4);
    let (code, _, _) = bin(&[
        p,
        "fiber",
        "--at",
        "q",
        "--kind",
        "corr",
        "--max-power",
        "3",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn validation_errors_exit_2() {
    let missing_field = scratch("nofield.problem", "vars x\n");
    let (code, _, err) = bin(&[missing_field.to_str().unwrap(), "codim"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");

    let bad_poly = scratch("badpoly.problem", "field 7\nvars x y\nideal I: x*(y\n");
    let (code, out, _) = bin(&[bad_poly.to_str().unwrap(), "codim", "--json"]);
    assert_eq!(code, 2);
    assert!(out.contains("\"code\": \"syntax\""), "{out}");

    let principal = scratch(
        "principal.problem",
        "field 32003\nvars x y z\nideal I: x^2 x*y x*z\n",
    );
    let (code, out, _) = bin(&[principal.to_str().unwrap(), "spread", "--json"]);
    assert_eq!(code, 2);
    assert!(out.contains("codimension-too-small"), "{out}");

    let p = golden("monomial.problem");
    let (code, _, err) = bin(&[p.to_str().unwrap(), "fiber", "--at", "nowhere"]);
    assert_eq!(code, 2);
    assert!(err.contains("nowhere"));
    let (code, _, _) = bin(&[p.to_str().unwrap(), "frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn rational_two_variable_problem() {
    let p = scratch("xy.problem", "field 0\nvars x y\nideal I: x y\n");
    let (code, out, _) = bin(&[p.to_str().unwrap(), "gb", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"], "QQ");
    assert_eq!(v["results"]["I"], serde_json::json!(["x", "y"]));
    assert_eq!(v["codimensions"]["I"], 2);
}

#[test]
fn human_output_by_default() {
    let p = golden("monomial.problem");
    let (code, out, _) = bin(&[p.to_str().unwrap(), "fiber", "--at", "q"]);
    assert_eq!(code, 0);
    assert!(out.contains("row: (b, c)"));
    assert!(out.contains("morphism: (1)"));
}
