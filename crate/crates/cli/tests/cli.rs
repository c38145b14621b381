use std::process::{Command, Output};

use serde_json::Value;

fn spodet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spodet"))
        .args(args)
        .output()
        .expect("spawn spodet")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn read_csv(path: &std::path::Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn char_symplectic_of_plancherel() {
    let out = spodet(&["char", "--kind", "sp", "--lambda", "3,1", "--rho", "plancherel:0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    // s_{31}(pl) - s_{2}(pl) = θ⁴·3/24 - θ²/2
    let (re, im) = complex(&r["result"]["value"]);
    assert!((re + 0.1171875).abs() < 1e-15 && im.abs() < 1e-15);
    assert_eq!(r["tool"], "spodet");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config"]["command"]["char"]["lambda"], "3,1");
}

#[test]
fn verify_bo_example() {
    let out = spodet(&[
        "verify",
        "bo",
        "--kind",
        "sp",
        "--rho-plus-coeffs",
        "0.4",
        "--rho-minus-coeffs",
        "0.3",
        "--m",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert!(r["residual"].as_f64().unwrap() < 1e-8);
    let (l, _) = complex(&r["lhs"]);
    let (rr, _) = complex(&r["rhs"]);
    assert!((l - rr).abs() < 1e-8);
}

#[test]
fn kernel_methods_agree() {
    let out = spodet(&[
        "kernel",
        "--kind",
        "o",
        "--rho-plus",
        "plancherel:0.4",
        "--rho-minus",
        "plancherel:0.3",
        "--a",
        "-0.5",
        "--b",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert!(r["diff"].as_f64().unwrap() < 1e-9);
    assert!(r.get("series").is_some() && r.get("quadrature").is_some());
}

#[test]
fn measure_check_against_closed_form() {
    let out = spodet(&[
        "measure-check",
        "--kind",
        "sp",
        "--rho-plus",
        "plancherel:0.4",
        "--rho-minus",
        "plancherel:0.3",
        "--max-weight",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    let (z, _) = complex(&r["Z"]);
    assert!((z - (0.4f64 * 0.3 - 0.3 * 0.3 / 2.0).exp()).abs() < 1e-14);
    assert!(r["deviation"].as_f64().unwrap() <= r["tail_bound"].as_f64().unwrap());
}

#[test]
fn verify_cauchy_and_gessel() {
    let out = spodet(&["verify", "cauchy", "--kind", "o", "--xs", "0.9", "--ys", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    // (1 - y²) / ((1 - xy)(1 - y/x))
    let (rhs, _) = complex(&json(&out)["result"]["rhs"]);
    assert!((rhs - (1.0 - 0.09) / ((1.0 - 0.27) * (1.0 - 0.3 / 0.9))).abs() < 1e-14);

    let out = spodet(&[
        "verify",
        "gessel",
        "--kind",
        "2",
        "--rho-plus-coeffs",
        "0.4",
        "--rho-minus-coeffs",
        "0.3",
        "--size",
        "3",
        "--max-weight",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn truncation_too_short_is_a_verification_failure() {
    let out = spodet(&[
        "verify",
        "gessel",
        "--kind",
        "1",
        "--rho-plus-coeffs",
        "0.5",
        "--rho-minus-coeffs",
        "0.5",
        "--size",
        "3",
        "--max-weight",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn szego_rows_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("szego.csv");
    let out = spodet(&[
        "szego",
        "--sizes",
        "1..10",
        "--rho-plus-coeffs",
        "0.4",
        "--rho-minus-coeffs",
        "0.3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&path);
    assert_eq!(rows[0], ["kind", "size", "lhs_re", "lhs_im", "deviation"]);
    assert_eq!(rows.len(), 1 + 2 * 10);
    let limit = (0.4f64 * 0.3 - 0.3 * 0.3 / 2.0).exp();
    let last: f64 = rows[10][2].parse().unwrap();
    assert!((last - limit).abs() < 1e-10);
}

#[test]
fn edge_deviation_column_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = spodet(&["edge", "--model", "pa", "--theta", "15,30,60", "--s", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&path);
    let col = rows[0].iter().position(|h| h == "deviation").unwrap();
    let dev: Vec<f64> = rows[1..].iter().map(|r| r[col].parse().unwrap()).collect();
    assert_eq!(dev.len(), 3);
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
}

#[test]
fn tw2_grid_is_a_distribution_function() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f2.csv");
    let out = spodet(&["tw2", "--s-grid", "-6:4:0.25", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 42);
    let f: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(f.windows(2).all(|w| w[1] >= w[0]));
    assert!(f[0] < 1e-6 && (f[40] - 1.0).abs() < 1e-6);
    let s0 = rows.iter().position(|r| r[0] == "0.0").unwrap();
    assert!((f[s0 - 1] - 0.969_372_828_355).abs() < 1e-9);
}

#[test]
fn f21_plus_and_minus() {
    for sign in ["plus", "minus"] {
        let out = spodet(&["f21", "--sign", sign, "--s-grid", "-3:3:1"]);
        assert_eq!(out.status.code(), Some(0), "{sign}");
        let rows = json(&out)["result"]["rows"].as_array().unwrap().clone();
        assert_eq!(rows.len(), 7);
        let last = rows[6]["value"].as_f64().unwrap();
        assert!((last - 1.0).abs() < 1e-3);
    }
}

#[test]
fn selftest_passes() {
    let out = spodet(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["result"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["bogus"],
        vec!["char", "--kind", "sp", "--lambda", "3,1", "--rho", "plancherel:0.5", "--frobnicate"],
        vec!["char", "--kind", "sp", "--lambda", "3,1", "--rho", "wat:1"],
        vec!["char", "--kind", "sp", "--lambda", "1,3", "--rho", "zero"],
        vec!["tw2", "--s-grid", "4:-6:0.25"],
        vec!["kernel", "--kind", "sp", "--rho-plus", "zero", "--rho-minus", "zero", "--a", "0.3", "--b", "0.5"],
        vec!["--threads", "0", "selftest"],
        vec!["verify", "gessel", "--kind", "5", "--size", "2"],
    ] {
        let out = spodet(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn tolerance_is_enforced() {
    let out = spodet(&["tw2", "--s-grid", "0:1:1", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_from_environment() {
    let args = [
        "measure-check",
        "--kind",
        "o",
        "--rho-plus",
        "plancherel:0.3",
        "--rho-minus",
        "plancherel:0.2",
        "--max-weight",
        "15",
    ];
    let out = spodet(&args);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_spodet"))
        .args(args)
        .env("SPODET_MAX_WEIGHT", "15")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_reproducible_across_threads() {
    let base = ["selftest", "--seed", "7"];
    let run = |threads: &str| {
        let mut args = vec!["--threads", threads];
        args.extend(base);
        let mut r = json(&spodet(&args));
        r["config"]["threads"] = Value::Null;
        serde_json::to_string(&r).unwrap()
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("3"));
}
