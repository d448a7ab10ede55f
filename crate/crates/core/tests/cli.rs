use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatsnell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("no '{key}' line in:\n{text}"))
}

#[test]
fn snell_complex_step() {
    let out = stdout(&["snell", "--theta-deg", "30", "--v1", "0.5"]);
    assert!(line(&out, "phi").contains("45.000000 deg"), "{out}");
    assert!(line(&out, "regime").contains("propagating"));
}

#[test]
fn snell_pure_quaternionic_step() {
    let out = stdout(&["snell", "--theta-deg", "45", "--e", "3", "--v2", "1"]);
    let phi = line(&out, "Phi");
    let rad: f64 = phi
        .split('(')
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    let expected = ((3.0 / (2.0 * 2f64.sqrt())).sqrt() / 2f64.sqrt()).asin();
    assert!((rad - expected).abs() < 1e-9, "{phi}");
    assert!((3.84..=3.86).contains(&(std::f64::consts::PI / rad)));
    assert!(line(&out, "index").contains("N = "));
}

#[test]
fn snell_free_space_is_undeflected() {
    let out = stdout(&["snell", "--theta-deg", "30"]);
    assert!(line(&out, "phi").contains("30.000000 deg"));
    assert!(!out.contains("-0.000000"));
}

#[test]
fn snell_reports_total_reflection() {
    let out = stdout(&["snell", "--theta-deg", "60", "--v1", "0.5"]);
    assert!(line(&out, "phi").contains("none"));
    assert!(line(&out, "regime").contains("total_internal_reflection"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["snell", "--e", "-1"][..],
        &["snell", "--theta-deg", "95"],
        &["snell", "--v2", "1"],
        &["critical", "--points", "1"],
        &["reflect", "--mode", "bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn critical_csv_schema() {
    let out = stdout(&["critical", "--points", "4"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,theta_c_complex_rad,theta_c_complex_deg,theta_c_quaternionic_rad,theta_c_quaternionic_deg,status"
    );
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2], "0.5,0.785398163,45,1.19606189,68.5292986,ok");
}

#[test]
fn critical_perturbation_columns() {
    let out = stdout(&[
        "critical",
        "--points",
        "3",
        "--perturb-a",
        "0.2",
        "--perturb-eps",
        "0.1",
    ]);
    assert!(out
        .lines()
        .next()
        .unwrap()
        .contains("theta_c_perturbed_deg,status"));
}

#[test]
fn reflect_json_records() {
    let out = stdout(&["reflect", "--points", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let q = row["quaternionic_abs_r"].as_f64().unwrap();
        let c = row["complex_abs_r"].as_f64().unwrap();
        assert!(q <= c + 1e-9);
        assert_eq!(row["quaternionic_regime"], "propagating");
    }
}

#[test]
fn reflect_angle_axis_keeps_invalid_rows() {
    let out = stdout(&[
        "reflect",
        "--axis",
        "incidence-angle",
        "--ratio",
        "1.2",
        "--points",
        "6",
    ]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    // |V_q|/E = 1.2 is above threshold for the quaternionic series.
    assert!(lines[1..].iter().all(|l| l.ends_with(",invalid")));
}

#[test]
fn wavefield_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    stdout(&[
        "wavefield",
        "--theta-deg",
        "30",
        "--v2",
        "0.3",
        "--points",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "y_star,z_star,region,psi_w,psi_x,psi_y,psi_z,psi_norm"
    );
    assert_eq!(lines.count(), 25);
}

#[test]
fn verify_pde_documents_paper_literal_plateau() {
    let out = stdout(&["verify", "--scope", "pde", "--mode", "paper-literal"]);
    assert!(out.contains("DOCUMENTED"));
    assert!(!out.contains("FAIL "));
    let out = stdout(&[
        "verify",
        "--scope",
        "pde",
        "--mode",
        "dispersion-consistent",
    ]);
    assert!(!out.contains("DOCUMENTED"));
}

#[test]
fn verify_identity_exits_zero() {
    let out = stdout(&["verify", "--scope", "identity"]);
    assert!(out.contains("2x(1-x)"));
    assert!(out.contains("DOCUMENTED"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["critical", "--points", "50"][..],
        &[
            "reflect",
            "--axis",
            "incidence-angle",
            "--points",
            "40",
            "--format",
            "json",
        ],
        &[
            "wavefield",
            "--theta-deg",
            "70",
            "--v1",
            "0.5",
            "--v3",
            "0.2",
            "--points",
            "9",
        ],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
