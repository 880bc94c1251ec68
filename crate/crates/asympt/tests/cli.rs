//! End-to-end tests against the built binary: output shapes, exit
//! codes, byte-level determinism, and the JSON round-trip.

use std::process::{Command, Output};

fn asympt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asympt"))
        .args(args)
        .env_remove("ASYMPT_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn coeffs_text_includes_paper_values() {
    let out = asympt(&["coeffs", "--family", "poisson", "--M", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("c[3,4] = 3"), "{text}");
    assert!(text.contains("c[4,4] = 1"), "{text}");
}

#[test]
fn coeffs_recursion_table_is_byte_identical() {
    let a = asympt(&["coeffs", "--family", "poisson", "--M", "4"]);
    let b = asympt(&[
        "coeffs",
        "--family",
        "poisson",
        "--M",
        "4",
        "--poisson-recursion",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn coeffs_nb_exact_fraction() {
    let out = asympt(&["coeffs", "--family", "nb:p=1/2", "--M", "3"]);
    assert!(stdout(&out).contains("c[2,2] = 2"));
    // fractions render exactly
    let out = asympt(&["coeffs", "--family", "nb:p=1/3", "--M", "2"]);
    assert!(stdout(&out).contains("c[2,2] = 3"), "{}", stdout(&out));
    assert!(stdout(&out).contains("c[3,3] = 15"), "{}", stdout(&out));
}

#[test]
fn expand_collected_text_matches_paper_display() {
    let out = asympt(&[
        "expand",
        "--family",
        "poisson",
        "--phi",
        "power:r=-1/2,a=0",
        "--M",
        "3",
        "--collect",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x^(1/2) * (1 - 1/8 * x^-1 - 7/128 * x^-2)\n");
}

#[test]
fn expand_raw_binomial_log_n2_coefficient() {
    let out = asympt(&[
        "expand",
        "--family",
        "binomial:p=1/2",
        "--phi",
        "log:beta=1",
        "--M",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // n=2 piece: -(q/2) x (x+1)^-2 = -1/4 x (x+1)^-2
    assert!(
        stdout(&out).contains("- 1/4 * x * (x+1)^(-2)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn expand_m1_renders_bare_phi() {
    let out = asympt(&[
        "expand", "--family", "gamma", "--phi", "xlogx", "--M", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["n"], 0);
}

#[test]
fn json_round_trips_through_parser() {
    let out = asympt(&[
        "expand",
        "--family",
        "nb:p=2/5",
        "--phi",
        "power:r=1,a=1",
        "--M",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed = asympt::expansion::from_json(text.trim()).unwrap();
    assert_eq!(asympt::expansion::to_json(&parsed) + "\n", text);
}

#[test]
fn identical_argv_produces_identical_bytes() {
    for args in [
        vec!["coeffs", "--family", "binomial:p=1/3", "--M", "5"],
        vec![
            "expand",
            "--family",
            "gamma",
            "--phi",
            "xlogx",
            "--M",
            "3",
            "--collect",
            "--format",
            "latex",
        ],
        vec!["oracle", "--family", "gamma", "--phi", "xlogx", "--x", "50"],
        vec![
            "verify",
            "--family",
            "poisson",
            "--phi",
            "log:beta=1",
            "--M",
            "2",
            "--grid",
            "100:800:x2",
        ],
    ] {
        let a = asympt(&args);
        let b = asympt(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn verify_poisson_sqrt_passes_with_slope_summary() {
    let out = asympt(&[
        "verify",
        "--family",
        "poisson",
        "--phi",
        "power:r=-1/2,a=0",
        "--M",
        "3",
        "--grid",
        "100:800:x2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("x,oracle,expansion,abs_err,scaled_err\n"));
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with("slope=-"), "{summary}");
    assert!(summary.ends_with("pass=true"), "{summary}");
    assert_eq!(text.lines().count(), 1 + 4 + 1); // header + rows + summary
}

#[test]
fn verify_gamma_xlogx_passes() {
    let out = asympt(&[
        "verify",
        "--family",
        "gamma",
        "--phi",
        "xlogx",
        "--M",
        "3",
        "--grid",
        "50:400:x2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_writes_csv_file_when_asked() {
    let dir = std::env::temp_dir().join("asympt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let out = asympt(&[
        "verify",
        "--family",
        "poisson",
        "--phi",
        "log:beta=1",
        "--M",
        "2",
        "--grid",
        "100:800:x2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // summary only on stdout; rows in the file
    assert!(stdout(&out).starts_with("slope="));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x,oracle,expansion,abs_err,scaled_err\n"));
    assert_eq!(csv.lines().count(), 5);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn oracle_prints_result_fields() {
    let out = asympt(&[
        "oracle",
        "--family",
        "nb:p=1/2",
        "--phi",
        "log:beta=1",
        "--n",
        "40",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .next()
        .unwrap()
        .strip_prefix("value = ")
        .unwrap()
        .parse()
        .unwrap();
    // reference value from an independent 60-digit summation
    assert!((value - 3.689_205_724_493_932).abs() < 1e-9, "{text}");
    assert!(text.contains("terms_used = "));
    assert!(text.contains("tail_bound = "));
    assert!(text.contains("method = sum"));
}

// ------------------------------------------------------------ exit codes

#[test]
fn exit_2_on_bad_arguments() {
    // unknown family
    assert_eq!(
        asympt(&["coeffs", "--family", "weibull", "--M", "3"])
            .status
            .code(),
        Some(2)
    );
    // malformed spec string
    assert_eq!(
        asympt(&["coeffs", "--family", "binomial:q=1/2", "--M", "3"])
            .status
            .code(),
        Some(2)
    );
    // p out of range
    assert_eq!(
        asympt(&["coeffs", "--family", "binomial:p=3/2", "--M", "3"])
            .status
            .code(),
        Some(2)
    );
    // M out of range
    assert_eq!(
        asympt(&["coeffs", "--family", "poisson", "--M", "31"])
            .status
            .code(),
        Some(2)
    );
    // missing required flag (clap-level)
    assert_eq!(asympt(&["coeffs", "--M", "3"]).status.code(), Some(2));
    // unknown subcommand (clap-level)
    assert_eq!(asympt(&["frobnicate"]).status.code(), Some(2));
    // bad grid
    assert_eq!(
        asympt(&["verify", "--family", "poisson", "--phi", "xlogx", "--M", "2", "--grid", "abc",])
            .status
            .code(),
        Some(2)
    );
    // two-point grid: insufficient data for a slope
    assert_eq!(
        asympt(&[
            "verify",
            "--family",
            "poisson",
            "--phi",
            "log:beta=1",
            "--M",
            "2",
            "--grid",
            "100:200:x2",
        ])
        .status
        .code(),
        Some(2)
    );
    // discrete grid point off the natural index lattice (n = 3x/2 at x=101)
    assert_eq!(
        asympt(&[
            "verify",
            "--family",
            "binomial:p=2/3",
            "--phi",
            "log:beta=1",
            "--M",
            "2",
            "--grid",
            "101:404:x2",
        ])
        .status
        .code(),
        Some(2)
    );
    // oracle with the wrong index flavor
    assert_eq!(
        asympt(&["oracle", "--family", "poisson", "--phi", "xlogx", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exit_3_on_unsupported_collection() {
    let out = asympt(&[
        "expand",
        "--family",
        "poisson",
        "--phi",
        "log:beta=1",
        "--M",
        "3",
        "--collect",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // shifted power is raw-only as well
    let out = asympt(&[
        "expand",
        "--family",
        "poisson",
        "--phi",
        "power:r=1,a=1",
        "--M",
        "3",
        "--collect",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_4_on_convergence_failure() {
    // a tiny iteration cap forces the convergence error path
    let out = Command::new(env!("CARGO_BIN_EXE_asympt"))
        .args([
            "oracle",
            "--family",
            "poisson",
            "--phi",
            "log:beta=1",
            "--x",
            "5000",
            "--tol",
            "1e-13",
        ])
        .env("ASYMPT_MAX_TERMS", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_0_on_help_and_version() {
    assert_eq!(asympt(&["--help"]).status.code(), Some(0));
    assert_eq!(asympt(&["--version"]).status.code(), Some(0));
}

#[test]
fn max_terms_env_is_respected_when_sufficient() {
    // generous override still converges
    let out = Command::new(env!("CARGO_BIN_EXE_asympt"))
        .args([
            "oracle", "--family", "poisson", "--phi", "xlogx", "--x", "100",
        ])
        .env("ASYMPT_MAX_TERMS", "1000000")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}
