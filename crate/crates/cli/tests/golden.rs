//! Golden-file tests for every subcommand.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the expected outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

const FIG2: &str = r#"{"outer":[5,4,3,1],"inner":[3,2,2],"n":3,"rows":[[1,1],[1,3],[2],[3]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stretched-schur"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

fn check(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: stderr was {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).expect("write golden file");
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(stdout, expected, "{name} differs from {}", path.display());
}

#[test]
fn tableaux_pretty() {
    check(
        "tableaux_pretty",
        &["tableaux", "--outer", "[2,1]", "--inner", "[1]", "--n", "2"],
        0,
    );
}

#[test]
fn tableaux_weight_json() {
    check(
        "tableaux_weight_json",
        &[
            "tableaux",
            "--outer",
            "[5,4,3,1]",
            "--inner",
            "[3,2,2]",
            "--n",
            "3",
            "--w",
            "[3,1,2]",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn schur_pretty() {
    check("schur_pretty", &["schur", "--outer", "[1]", "--n", "2"], 0);
}

#[test]
fn schur_json() {
    check(
        "schur_json",
        &[
            "schur", "--outer", "[2,2]", "--inner", "[1]", "--n", "3", "--format", "json",
        ],
        0,
    );
}

#[test]
fn insert_pretty() {
    check("insert_pretty", &["insert", "--left", FIG2, "--right", FIG2], 0);
}

#[test]
fn insert_json() {
    check(
        "insert_json",
        &[
            "insert",
            "--left",
            r#"{"outer":[2],"n":2,"rows":[[1,2]]}"#,
            "--right",
            r#"{"outer":[1,1],"n":2,"rows":[[1],[2]]}"#,
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn char_poly_pretty() {
    check("char_poly_pretty", &["char-poly", "--mu", "[1]", "--n", "2"], 0);
}

#[test]
fn char_poly_json() {
    check(
        "char_poly_json",
        &[
            "char-poly",
            "--mu",
            "[2,1]",
            "--nu",
            "[1]",
            "--n",
            "2",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn verify_h() {
    check(
        "verify_h",
        &["verify", "--mu", "[1]", "--nu", "[]", "--n", "2", "--count", "6"],
        0,
    );
}

#[test]
fn verify_shifted_pretty() {
    check(
        "verify_shifted_pretty",
        &[
            "verify", "--kappa", "[1]", "--lambda", "[2]", "--mu", "[1]", "--n", "2", "--format", "pretty",
        ],
        0,
    );
}

#[test]
fn verify_refuted_before_stabilization() {
    // χ = 1 for a column longer than n, but s_0 = 1 is not zero.
    check(
        "verify_refuted",
        &["verify", "--mu", "[1,1]", "--n", "1", "--r", "0"],
        2,
    );
}

#[test]
fn minimal_json() {
    check(
        "minimal_json",
        &["minimal", "--mu", "[2,1]", "--nu", "[1]", "--n", "2", "--seed", "7"],
        0,
    );
}

#[test]
fn minimal_pretty() {
    check(
        "minimal_pretty",
        &["minimal", "--mu", "[2]", "--n", "3", "--format", "pretty"],
        0,
    );
}

#[test]
fn kostka_pretty() {
    check("kostka_pretty", &["kostka", "--outer", "[2,1]", "--w", "[1,1,1]"], 0);
}

#[test]
fn kostka_witness_json() {
    check(
        "kostka_witness_json",
        &[
            "kostka",
            "--outer",
            "[5,4,3,1]",
            "--inner",
            "[3,2,2]",
            "--w",
            "[3,1,2]",
            "--k",
            "2",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn m_basis_json() {
    check("m_basis_json", &["m-basis", "--outer", "[2,1]", "--n", "3"], 0);
}

#[test]
fn m_basis_pretty() {
    check(
        "m_basis_pretty",
        &[
            "m-basis", "--outer", "[3,2]", "--inner", "[1]", "--n", "3", "--format", "pretty",
        ],
        0,
    );
}

#[test]
fn conjecture_pretty() {
    check(
        "conjecture_pretty",
        &["conjecture", "--mu", "[2,1]", "--n", "3", "--format", "pretty"],
        0,
    );
}

#[test]
fn conjecture_json() {
    check(
        "conjecture_json",
        &["conjecture", "--mu", "[2]", "--nu", "[1]", "--n", "2"],
        0,
    );
}

#[test]
fn polynomiality_json() {
    check(
        "polynomiality_json",
        &["polynomiality", "--mu", "[2,1]", "--nu", "[1]", "--n", "2"],
        0,
    );
}

#[test]
fn polynomiality_pretty() {
    check(
        "polynomiality_pretty",
        &[
            "polynomiality",
            "--mu",
            "[2,1]",
            "--nu",
            "[1]",
            "--n",
            "3",
            "--format",
            "pretty",
        ],
        0,
    );
}

#[test]
fn roots_csv() {
    check(
        "roots_csv",
        &[
            "roots",
            "--mu",
            "[2,1,0]",
            "--n",
            "3",
            "--xi-radius",
            "1",
            "--kmax",
            "8",
        ],
        0,
    );
}

#[test]
fn roots_pretty() {
    check(
        "roots_pretty",
        &[
            "roots", "--mu", "[2,1]", "--nu", "[1]", "--n", "2", "--kmax", "6", "--format", "pretty",
        ],
        0,
    );
}

#[test]
fn roots_json() {
    check(
        "roots_json",
        &[
            "roots",
            "--mu",
            "[1]",
            "--n",
            "2",
            "--xi-radius",
            "2",
            "--xi-angles",
            "[0.5]",
            "--kmax",
            "3",
            "--format",
            "json",
        ],
        0,
    );
}
