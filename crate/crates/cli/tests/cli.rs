use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airy-stokes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_latex_2_1() {
    let o = run(&["compute", "--n", "2", "--m", "1", "--format", "latex"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("\\begin{pmatrix}"), "{s}");
    assert!(s.contains("1 & 1 \\\\"), "{s}");
    assert!(s.contains("-1 & -1"), "{s}");
}

#[test]
fn compute_json_is_deterministic() {
    let args = ["compute", "--n", "3", "--m", "2", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["n", "m", "order", "theta0", "lambda", "dominance", "S_b", "S_mb", "sequence_rule", "gauge"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["theta0"], serde_json::json!({"num": 1, "den": 45, "of": "2pi"}));
    assert_eq!(v["sequence_rule"], "S_even=S_b, S_odd=inv(S_mb)");
    assert_eq!(v["gauge"], "phi_k = P^k c");
}

#[test]
fn galois_group() {
    assert_eq!(stdout(&run(&["galois", "--n", "4", "--m", "3"])).trim(), "Sp(4)");
    assert_eq!(stdout(&run(&["galois", "--n", "3", "--m", "2"])).trim(), "SL(3)");
}

#[test]
fn dominance_chain() {
    assert_eq!(stdout(&run(&["order", "--n", "7"])).trim(), "1 > ζ^6 > ζ > ζ^5 > ζ^2 > ζ^4 > ζ^3");
}

#[test]
fn chain_passes() {
    let o = run(&["chain", "--n", "3", "--m", "1"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn oracle_passes() {
    let o = run(&["oracle", "--n", "2", "--m", "1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["comparisons"].as_array().unwrap().len(), 3);
}

#[test]
fn non_coprime_exits_one() {
    let o = run(&["compute", "--n", "2", "--m", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[not-coprime]"));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run(&["compute", "--n", "x", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--n", "0", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_small_grid() {
    let o = run(&["verify", "--bound", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
}
