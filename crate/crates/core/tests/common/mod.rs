#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CENTRAL: &str = "sum(i+j=n) C(2*i,i)*C(2*j,j) == 4^n";
pub const SHIFTED: &str = "sum(i+j=n) C(2*i-l,i)*C(2*j+l,j) == 4^n";
pub const AUX: &str = "sum(i=0..p) (-1)^i * C(l-i,p) * C(p,i) == 1";

pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<&'static str>,
    pub env: Vec<(&'static str, &'static str)>,
}

fn case(name: &'static str, args: &[&'static str]) -> GoldenCase {
    GoldenCase { name, args: args.to_vec(), env: Vec::new() }
}

/// Every golden invocation, each run in both output formats.
pub fn golden_cases() -> Vec<GoldenCase> {
    vec![
        case("verify_poly_shifted", &["verify", "--mode", "poly", "--free", "l", "--range", "n=0..6", "--expr", SHIFTED]),
        case("verify_numeric_central", &["verify", "--mode", "numeric", "--assign", "n=3", "--expr", CENTRAL]),
        case("verify_numeric_shifted", &["verify", "--assign", "n=2", "--assign", "l=-5/2", "--expr", SHIFTED]),
        case("verify_failing", &["verify", "--expr", "C(2,1) == 3"]),
        case("verify_poly_failing", &["verify", "--mode", "poly", "--free", "l", "--expr", "C(l,1) == l - 1"]),
        case("verify_malformed", &["verify", "--expr", "C(2,1) == "]),
        case(
            "verify_file",
            &["verify", "--mode", "poly", "--free", "l", "--range", "n=0..2", "--range", "p=0..1", "--file", "tests/data/identities.txt"],
        ),
        case("trace_n1", &["trace", "--n", "1", "--ell", "3"]),
        case("trace_n0", &["trace", "--n", "0", "--ell", "13/7"]),
        case("trace_n4", &["trace", "--n", "4", "--ell", "-2"]),
        case("trace_substituted", &["trace", "--n", "3", "--ell", "-5/2", "--substitute"]),
        case("series_central", &["series", "--alpha", "-1/2", "--a", "-4", "--terms", "5"]),
        case("series_square", &["series", "--alpha", "-1/2", "--a", "-4", "--terms", "4", "--square"]),
        case("series_linear", &["series", "--alpha", "1", "--a", "1", "--terms", "3"]),
        case("oracle_5_2", &["oracle", "--ell", "5", "--p", "2"]),
        case("oracle_4_0", &["oracle", "--ell", "4", "--p", "0"]),
        case("oracle_8_all", &["oracle", "--ell", "8", "--all"]),
        case("oracle_cap", &["oracle", "--ell", "30", "--p", "15"]),
        GoldenCase {
            name: "oracle_env_cap",
            args: vec!["oracle", "--ell", "6", "--p", "3"],
            env: vec![("BINOMVERIFY_ENUM_CAP", "10")],
        },
    ]
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// Single-file rendering stored as the golden.
    pub fn render(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

pub fn run_cli(args: &[&str], env: &[(&str, &str)]) -> Outcome {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_binomverify"));
    cmd.current_dir(manifest_dir()).args(args).env_remove("BINOMVERIFY_ENUM_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to spawn binomverify");
    Outcome {
        code: out.status.code().expect("terminated by signal"),
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    }
}

pub fn golden_path(name: &str, format: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.{format}.golden"))
}

/// Runs one case in one format and compares with (or, when `UPDATE_GOLDEN`
/// is set, rewrites) its golden file.
pub fn check_golden(case: &GoldenCase, format: &str) -> Result<Outcome, String> {
    let mut args = vec!["--format", format];
    args.extend(case.args.iter().copied());
    let outcome = run_cli(&args, &case.env);
    let path = golden_path(case.name, format);
    let actual = outcome.render();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(outcome);
    }
    let expected = read(&path)?;
    if expected != actual {
        return Err(format!(
            "{} differs from {}\n--- expected\n{expected}\n--- actual\n{actual}",
            case.name,
            path.display()
        ));
    }
    Ok(outcome)
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| {
        format!("cannot read {}: {e}; regenerate with UPDATE_GOLDEN=1 cargo test", path.display())
    })
}
