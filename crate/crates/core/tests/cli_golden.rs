mod common;

use common::{check_golden, golden_cases, run_cli, SHIFTED};
use serde_json::Value;

fn expected_exit(name: &str) -> i32 {
    match name {
        "verify_failing" | "verify_poly_failing" => 1,
        "verify_malformed" | "oracle_cap" | "oracle_env_cap" => 2,
        _ => 0,
    }
}

#[test]
fn golden_outputs_match() {
    let mut failures = Vec::new();
    for case in golden_cases() {
        for format in ["text", "json"] {
            match check_golden(&case, format) {
                Ok(outcome) => {
                    if outcome.code != expected_exit(case.name) {
                        failures.push(format!("{} ({format}): exit {}", case.name, outcome.code));
                    }
                    if outcome.code == 2 && outcome.stderr.is_empty() {
                        failures.push(format!("{} ({format}): no diagnostic on stderr", case.name));
                    }
                    if format == "json" && outcome.code != 2 {
                        if let Err(e) = serde_json::from_str::<Value>(&outcome.stdout) {
                            failures.push(format!("{}: invalid JSON: {e}", case.name));
                        }
                    }
                }
                Err(e) => failures.push(e),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for case in golden_cases() {
        for format in ["text", "json"] {
            let mut args = vec!["--format", format];
            args.extend(case.args.iter().copied());
            let a = run_cli(&args, &case.env).render();
            let b = run_cli(&args, &case.env).render();
            assert_eq!(a, b, "{} ({format})", case.name);
        }
    }
}

#[test]
fn text_and_json_agree() {
    let args = ["verify", "--mode", "poly", "--free", "l", "--range", "n=0..4", "--expr", SHIFTED];
    let text = run_cli(&[&["--format", "text"][..], &args].concat(), &[]).stdout;
    let json: Value =
        serde_json::from_str(&run_cli(&[&["--format", "json"][..], &args].concat(), &[]).stdout).unwrap();
    let reports = json["reports"].as_array().unwrap();
    assert_eq!(json["command"], "verify");
    assert_eq!(reports.len(), 5);
    for (n, r) in reports.iter().enumerate() {
        assert_eq!(r["status"], "verified");
        assert_eq!(r["degree_bound"], n as u64);
        let value = 4u64.pow(n as u32).to_string();
        let lhs: Vec<&str> = r["lhs_value"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert_eq!(lhs, vec![value.as_str(); n + 1]);
        assert!(text.contains(&format!("assignments: n={n}\nfree symbol: l\ndegree bound: {n}\n")));
        assert!(text.contains(&format!("lhs: {}\n", vec![value.as_str(); n + 1].join(", "))));
    }

    let series_text = run_cli(&["series", "--alpha", "-1/2", "--a", "-4", "--terms", "6"], &[]).stdout;
    let series_json: Value = serde_json::from_str(
        &run_cli(&["--format", "json", "series", "--alpha", "-1/2", "--a", "-4", "--terms", "6"], &[]).stdout,
    )
    .unwrap();
    let coeffs: Vec<String> = series_json["reports"][0]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(series_json["reports"][0]["order"], 6);
    let from_text: Vec<String> =
        series_text.lines().map(|l| l.split_once(": ").unwrap().1.to_string()).collect();
    assert_eq!(coeffs, from_text);
    assert_eq!(coeffs, ["1", "2", "6", "20", "70", "252"]);
}

#[test]
fn malformed_inputs_never_panic() {
    let cases: &[&[&str]] = &[
        &["verify", "--expr", "((((("],
        &["verify", "--expr", "sum(i+j=n) == 1"],
        &["verify", "--expr", "C(1,2,3) == 0"],
        &["verify", "--expr", "1 == 1", "--range", "n=a..b"],
        &["verify", "--file", "tests/data/does-not-exist.txt"],
        &["verify", "--expr", "2^(0-1) == 1"],
        &["verify", "--expr", "C(3, h) == 1", "--assign", "h=1/2"],
        &["trace", "--n", "x", "--ell", "1"],
        &["series", "--alpha", "1/0", "--a", "1", "--terms", "2"],
        &["oracle", "--ell", "0", "--p", "0"],
        &["oracle", "--ell", "4", "--p", "1", "--all"],
        &[],
    ];
    for args in cases {
        let outcome = run_cli(args, &[]);
        assert_eq!(outcome.code, 2, "{args:?}: {}", outcome.render());
        assert!(!outcome.stderr.is_empty(), "{args:?}");
        assert!(!outcome.stderr.contains("panicked"), "{args:?}");
    }
}
