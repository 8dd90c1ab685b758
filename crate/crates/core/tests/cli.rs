use std::process::{Command, Output};

fn spiked(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiked"))
        .args(args)
        .env_remove("SPIKED_PRECISION")
        .env_remove("SPIKED_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

const SEXTIC: [&str; 4] = ["--family", "sextic", "--g", "100"];

#[test]
fn stationary_points_and_admissibility() {
    let o = spiked(&[&["stationary", "--format", "csv"][..], &SEXTIC].concat());
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 8);
    let admissible: Vec<_> = rows.iter().filter(|r| r[5] == "true").collect();
    assert_eq!(admissible.len(), 1);
    assert_eq!(admissible[0][1], "0");
    assert!(admissible[0][2].starts_with("-3.6277"));

    for (m, n, count) in [("1", "1", 4), ("3", "3", 12)] {
        let o = spiked(&["stationary", "--family", "int", "--m", m, "--n", n, "--R", "1", "--format", "csv"]);
        assert_eq!(csv_rows(&o).len(), count, "m={m} n={n}");
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["perturb", "--family", "int", "--m", "1", "--n", "3", "--R", "2", "--order", "12", "--format", "json"];
    let (a, b) = (spiked(&args), spiked(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_rows_round_trip() {
    let o = spiked(&[&["harmonic", "--format", "json"][..], &SEXTIC].concat());
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert!(v.as_array().unwrap().iter().all(|row| row.is_object()));
}

#[test]
fn compare_bundle_carries_error_estimates() {
    let o = spiked(&["compare", "--family", "int", "--m", "1", "--n", "1", "--R", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["harmonic", "perturbative", "rpm", "reality"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["perturbative"]["err_est"].is_string());
    assert!(v["rpm"]["err_est"].is_string());
    assert_eq!(v["reality"]["within_estimate"], "true");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(spiked(&["nonsense"]).status.code(), Some(2));
    assert_eq!(spiked(&["stationary", "--family", "int", "--m", "1"]).status.code(), Some(2));
    assert_eq!(spiked(&["stationary", "--family", "sextic", "--g", "1", "--m", "1"]).status.code(), Some(2));
    assert_eq!(spiked(&["--precision", "32", "stationary", "--family", "sextic", "--g", "1"]).status.code(), Some(2));
    assert_eq!(spiked(&["table1", "--digits-target", "21"]).status.code(), Some(2));
}

#[test]
fn table_entry_passes_and_missed_target_fails() {
    let ok = spiked(&["table1", "--m", "1", "--n", "3", "--R", "5", "--format", "csv"]);
    assert!(ok.status.success());
    assert_eq!(csv_rows(&ok)[0][8], "pass");

    // The published (3,3) R=2 value carries 19 significant digits.
    let short = spiked(&["table1", "--m", "3", "--n", "3", "--R", "2", "--digits-target", "20"]);
    assert_eq!(short.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&short.stderr).contains("FAILED"));
}

#[test]
fn rpm_csv_quotes_model_labels() {
    let o = spiked(&["rpm", "--family", "int", "--m", "1", "--n", "1", "--R", "2", "--format", "csv", "--dmax", "8"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.len() == 12 && r[0] == "int(m=1,n=1,R=2)"));
    assert!(rows.last().unwrap()[6].starts_with("-6.0622577482985496523"));
}

#[test]
fn settings_precedence() {
    let x0 = |o: &Output| {
        let rows = csv_rows(o);
        rows.iter().find(|r| r[5] == "true").unwrap()[2].clone()
    };
    let base = [&["stationary", "--format", "csv", "--digits", "60"][..], &SEXTIC].concat();
    let at = |bits: &str| x0(&spiked(&[&["--precision", bits][..], &base].concat()));
    let (low, high) = (at("64"), at("256"));
    assert_ne!(low, high);

    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("spiked.toml");
    std::fs::write(&config, "precision = 64\n").unwrap();
    let config = config.to_str().unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_spiked"));
        cmd.env_remove("SPIKED_PRECISION").env("SPIKED_CONFIG", config).args(extra).args(&base);
        if let Some(bits) = env {
            cmd.env("SPIKED_PRECISION", bits);
        }
        x0(&cmd.output().unwrap())
    };
    assert_eq!(run(None, &[]), low);
    assert_eq!(run(Some("256"), &[]), high);
    assert_eq!(run(Some("256"), &["--precision", "64"]), low);

    std::fs::write(dir.path().join("bad.toml"), "precison = 64\n").unwrap();
    let bad = dir.path().join("bad.toml");
    let o = spiked(&[&["--config", bad.to_str().unwrap()][..], &base].concat());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn profile_writes_pt_symmetric_rows() {
    let o = spiked(&["profile", "--family", "int", "--m", "1", "--n", "3", "--R", "2", "--samples", "5", "--format", "csv"]);
    assert!(stdout(&o).starts_with("s,re_u,im_u\n"));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][1], rows[4][1]);
    assert_eq!(rows[0][2].trim_start_matches('-'), rows[4][2].trim_start_matches('-'));
    assert_ne!(rows[0][2].starts_with('-'), rows[4][2].starts_with('-'));
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("taylor.csv");
    let o = spiked(&[
        &["taylor", "--order", "4", "--format", "csv", "--out", out.to_str().unwrap()][..],
        &["--family", "int", "--m", "1", "--n", "3", "--R", "2"],
    ]
    .concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("j,re,im\n0,"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn fig2_writes_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(&["fig2", "--nmax", "12", "--threshold", "-2", "--curves", dir.path().to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csv_rows(&o).len(), 4);
    for (m, n) in [(1, 1), (1, 3), (3, 1), (3, 3)] {
        let text = std::fs::read_to_string(dir.path().join(format!("fig2_m{m}_n{n}.csv"))).unwrap();
        assert!(text.starts_with("n,log10_rel_err\n"));
        assert_eq!(text.lines().count(), 14);
    }
}
