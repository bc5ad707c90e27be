mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use boussinesq::scenario::write_outputs;
use boussinesq::snapshot::snapshot_file_name;
use boussinesq::spectral::apply_derivative;
use boussinesq::{
    run_scenario, ComparisonWindow, FroudeMode, InitialKind, Scenario, ScenarioConfig, Snapshot,
    Transform,
};

/// A few seconds of the traveling-wave setup on a small grid.
fn small_config() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::preset(Scenario::TravelingWave);
    cfg.n_sponge = 512;
    cfg.n_nosponge = 768;
    cfg.t_final = 1.0;
    cfg.snapshot_interval = 0.5;
    cfg.window = ComparisonWindow::new(-30.0, 30.0).unwrap();
    cfg
}

fn read_csv(path: &Path) -> (String, Vec<(f64, f64)>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    (header, rows)
}

#[test]
fn scenario_outputs_are_complete_and_deterministic() {
    let cfg = small_config();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let r = run_scenario(&cfg).unwrap();
        assert_eq!(r.errors.values[0], 0.0);
        write_outputs(&r, d.path()).unwrap();
    }
    let (a, b) = (dirs[0].path(), dirs[1].path());
    let mut files = vec![
        "errors.csv".to_string(),
        "stationary.dat".into(),
        "config.txt".into(),
        "report.txt".into(),
    ];
    for run in ["sponge", "nosponge"] {
        files.push(format!("{run}/amplitude.csv"));
        files.push(format!("{run}/boundary.csv"));
        for i in 0..3 {
            files.push(format!("{run}/{}", snapshot_file_name(i)));
        }
    }
    for f in &files {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f} differs"
        );
    }

    let (header, rows) = read_csv(&a.join("errors.csv"));
    assert_eq!(header, "t,E");
    assert_eq!(
        rows.iter().map(|r| r.0).collect::<Vec<_>>(),
        vec![0.0, 0.5, 1.0]
    );
    assert_eq!(read_csv(&a.join("sponge/amplitude.csv")).0, "t,amax");
    assert_eq!(read_csv(&a.join("nosponge/boundary.csv")).0, "t,activity");

    let snap = Snapshot::read(a.join("sponge").join(snapshot_file_name(2))).unwrap();
    assert_eq!(snap.header.n, 512);
    assert!(snap.header.sponge);
    assert!((snap.header.t - 1.0).abs() < 1e-12);
    let big = Snapshot::read(a.join("nosponge").join(snapshot_file_name(0))).unwrap();
    assert_eq!(big.header.n, 768);
    assert!(!big.header.sponge);
    let st = Snapshot::read(a.join("stationary.dat")).unwrap();
    assert!(st.header.stationary.is_some());

    let cfg_back = ScenarioConfig::from_file(a.join("config.txt")).unwrap();
    assert_eq!(cfg_back, cfg);
    assert!(fs::read_to_string(a.join("report.txt"))
        .unwrap()
        .contains("PASS initial_error_zero"));
}

#[test]
fn stationary_snapshot_restarts_a_run() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scenario(&small_config()).unwrap();
    write_outputs(&r, dir.path()).unwrap();

    let mut cfg = small_config();
    cfg.initial = InitialKind::File("stationary.dat".into());
    fs::write(dir.path().join("restart.cfg"), cfg.to_string()).unwrap();
    let loaded = ScenarioConfig::from_file(dir.path().join("restart.cfg")).unwrap();
    let again = run_scenario(&loaded).unwrap();
    assert_eq!(again.froude, r.froude);
    assert_eq!(again.sponge.snapshots, r.sponge.snapshots);

    // mismatched spacing is a grid error
    let mut other = loaded.clone();
    other.dx = 0.25;
    assert!(matches!(
        run_scenario(&other),
        Err(boussinesq::Error::GridMismatch(_))
    ));
}

#[test]
fn zero_initial_data_needs_a_fixed_froude() {
    let mut cfg = small_config();
    cfg.initial = InitialKind::Zero;
    assert!(cfg.validate().is_err());
    cfg.froude_mode = FroudeMode::Fixed;
    cfg.froude = 0.5;
    let r = run_scenario(&cfg).unwrap();
    assert!(r.errors.values.iter().all(|&e| e == 0.0));
}

#[test]
fn third_derivative_matches_finite_differences() {
    let g = common::grid(1024, 0.05);
    let f = |x: f64| (-x * x / 4.0).exp() * (2.0 * x).sin();
    let values: Vec<f64> = g.points().iter().map(|&x| f(x)).collect();
    let t = Transform::new(g.clone());
    let mut c = t.forward_real(&values);
    apply_derivative(&mut c, g.wavenumbers(), 3);
    let d3 = t.inverse_real(&c).values;
    // fourth-order central stencil for f'''
    let h = 1e-2;
    for (j, &x) in g.points().iter().enumerate().step_by(37) {
        let fd = (-f(x + 3.0 * h) + 8.0 * f(x + 2.0 * h) - 13.0 * f(x + h) + 13.0 * f(x - h)
            - 8.0 * f(x - 2.0 * h)
            + f(x - 3.0 * h))
            / (8.0 * h * h * h);
        assert!((d3[j] - fd).abs() < 1e-5, "x = {x}: {} vs {fd}", d3[j]);
    }
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boussinesq"))
}

#[test]
fn cli_stationary_writes_a_flagged_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wave.dat");
    let status = cli()
        .args([
            "stationary",
            "--amplitude",
            "0.3",
            "--alpha",
            "0.01",
            "--beta",
            "0.01",
        ])
        .args(["--n", "256", "--dx", "0.4", "--out"])
        .arg(&out)
        .env("RUST_LOG", "off")
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let s = Snapshot::read(&out).unwrap();
    let meta = s.header.stationary.unwrap();
    assert_eq!(meta.amplitude, 0.3);
    assert!(meta.residual < 1e-10);
    assert!(s.header.froude < -1.0);
}

#[test]
fn cli_oracle_prints_a_table() {
    let out = cli()
        .args([
            "oracle",
            "--b",
            "0",
            "--t",
            "0",
            "--profile",
            "gaussian",
            "--points",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace().map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 5);
    for (x, eta) in rows {
        assert!((eta - (-x * x).exp()).abs() < 1e-14);
    }
}

#[test]
fn cli_compare_and_evolve() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("small.cfg");
    fs::write(&cfg_path, small_config().to_string()).unwrap();
    let out = cli()
        .args(["compare", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(dir.path().join("cmp"))
        .env("RUST_LOG", "off")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: PASS"));
    assert!(dir.path().join("cmp/errors.csv").exists());

    let out = cli()
        .args(["evolve", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(dir.path().join("run"))
        .env("RUST_LOG", "off")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("run").join(snapshot_file_name(2)).exists());
    assert!(dir.path().join("run/config.txt").exists());

    fs::write(&cfg_path, "scenario = custom\nbogus = 1\n").unwrap();
    let out = cli()
        .args(["compare", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
