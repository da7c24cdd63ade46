#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn momlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momlat")).args(args).output().expect("spawn momlat")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Commands whose standard output is frozen under `tests/golden`.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("verify_a0.1_n64.csv", &["verify", "--p0", "0", "--a", "0.1", "--n", "64"]),
    ("verify_a0.1_n64.json", &["verify", "--p0", "0", "--a", "0.1", "--n", "64", "--format", "json"]),
    ("check_A_P.txt", &["check", "A*P"]),
    ("check_commutator_X_P.txt", &["check", "[X,P] + i - (i*a/2)*Q"]),
    ("eigvec_x0_a1_n5.csv", &["eigvec", "--x", "0", "--a", "1", "--n", "5"]),
    ("eigvec_x0.5_a1_n8.json", &["eigvec", "--x", "0.5", "--a", "1", "--n", "8", "--format", "json"]),
    ("spectrum_a1_n3.csv", &["spectrum", "--n", "3", "--a", "1"]),
    ("spectrum_a1_n16.json", &["spectrum", "--n", "16", "--a", "1", "--format", "json"]),
    ("continuum_default.csv", &["continuum", "--spacings", "0.1,0.05,0.025,0.0125"]),
    ("well_L1_levels16.csv", &["well", "--L", "1", "--levels", "16"]),
];

/// Compares `actual` with the golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn matches_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name}: output differs from golden file"))
    }
}
