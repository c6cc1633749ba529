use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const HALF: &str = "0.5,0,0.5,0,0.5,0,0.5,0";
/// (0, 1/√3, i/√3, 1/√3)
const THIRDS: &str = "0,0,0.5773502691896258,0,0,0.5773502691896258,0.5773502691896258,0";

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = qwalk(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn simulate_at_time_zero() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "t0.csv");
    ok(&[
        "simulate",
        "--theta1",
        "0.25",
        "--theta2",
        "0.25",
        "--q",
        "1,0,0,0,0,0,0,0",
        "--t",
        "0",
        "-o",
        &out,
    ]);
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "x,probability\n0,1.0\n"
    );
}

#[test]
fn simulate_column_sums_to_one() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "sim.csv");
    let sixth = (1.0f64 / 6.0).to_string();
    ok(&[
        "simulate", "--theta1", &sixth, "--theta2", &sixth, "--q", HALF, "--t", "500", "-o", &out,
    ]);
    let total: f64 = rows(Path::new(&out))
        .iter()
        .map(|r| r[1].parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-9, "{total}");
}

#[test]
fn with_limit_fills_inner_window() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "lim.csv");
    let sixth = (1.0f64 / 6.0).to_string();
    ok(&[
        "simulate",
        "--theta1",
        &sixth,
        "--theta2",
        "0.25",
        "--q",
        HALF,
        "--t",
        "500",
        "--with-limit",
        "-o",
        &out,
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,probability,limit_probability\n"));
    for r in rows(Path::new(&out)) {
        let x: i64 = r[0].parse().unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[2].is_empty(), x.abs() > 200, "x = {x}");
    }
}

#[test]
fn phase_grid_marks_invalid_rows() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "phase.csv");
    ok(&[
        "phase",
        "--theta1-axis",
        "0.25,0.5,0.75",
        "--theta2-axis",
        "0.2,0.3,0.5",
        "--q",
        HALF,
        "--n",
        "500",
        "-o",
        &out,
    ]);
    let grid = rows(Path::new(&out));
    assert_eq!(grid.len(), 9);
    for r in &grid {
        let invalid = r[0] == "0.5" || r[1] == "0.5";
        assert_eq!(r[3] == "Invalid", invalid, "{r:?}");
        assert_eq!(r[2].is_empty(), invalid);
    }
}

#[test]
fn game_xx_ends_winning() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "game.csv");
    let sixth = (1.0f64 / 6.0).to_string();
    ok(&[
        "game",
        "--theta1",
        &sixth,
        "--theta2",
        "0.25",
        "--q",
        THIRDS,
        "--t-max",
        "300",
        "--protocol",
        "XX",
        "-o",
        &out,
    ]);
    let series = rows(Path::new(&out));
    assert_eq!(series.len(), 300);
    assert_eq!(series[0][0], "1");
    let last: f64 = series.last().unwrap()[1].parse().unwrap();
    assert!(last > 0.0, "{last}");
}

#[test]
fn density_zeroth_moment() {
    let sixth = (1.0f64 / 6.0).to_string();
    let out = ok(&[
        "density", "--theta1", &sixth, "--theta2", "0.25", "--q", HALF, "--moment", "0",
    ]);
    let m: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((m - 1.0).abs() < 1e-8, "{m}");
}

#[test]
fn density_csv_columns() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "dens.csv");
    ok(&[
        "density", "--theta1", "0.25", "--theta2", "0.2", "--q", HALF, "--points", "11", "-o", &out,
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,f_of_x,delta,d0,d1,d2\n"));
    let body = rows(Path::new(&out));
    assert_eq!(body.len(), 11);
    assert!(body.iter().all(|r| r.len() == 6 && r[2..] == body[0][2..]));
    assert!(body.iter().all(|r| r[1].parse::<f64>().unwrap() >= 0.0));
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.csv");
    let bad_norm = qwalk(&[
        "limit",
        "--theta1",
        "0.25",
        "--theta2",
        "0.25",
        "--q",
        "1,0,1,0,0,0,0,0",
        "-o",
        &out,
    ]);
    assert_eq!(bad_norm.status.code(), Some(2));
    assert!(!bad_norm.stderr.is_empty());
    let bad_protocol = qwalk(&[
        "game",
        "--theta1",
        "0.25",
        "--theta2",
        "0.25",
        "--q",
        HALF,
        "--t-max",
        "5",
        "--protocol",
        "YX",
        "-o",
        &out,
    ]);
    assert_eq!(bad_protocol.status.code(), Some(2));
    let missing = qwalk(&["simulate", "--theta1", "0.25"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!Path::new(&out).exists());
}

#[test]
fn invalid_angles_exit_3() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.csv");
    let r = qwalk(&[
        "limit", "--theta1", "0.5", "--theta2", "0.25", "--q", HALF, "-o", &out,
    ]);
    assert_eq!(r.status.code(), Some(3));
    let d = qwalk(&[
        "density", "--theta1", "0.25", "--theta2", "1", "--q", HALF, "--moment", "1",
    ]);
    assert_eq!(d.status.code(), Some(3));
}

#[test]
fn rerun_reproduces_bytes() {
    let dir = TempDir::new().unwrap();
    let first = path(&dir, "a.csv");
    let second = path(&dir, "b.csv");
    ok(&[
        "--threads",
        "3",
        "phase",
        "--theta1-axis",
        "0.1:0.4:4",
        "--theta2-axis",
        "0.2,0.3",
        "--q",
        HALF,
        "--n",
        "300",
        "-o",
        &first,
    ]);
    let manifest_file = format!("{first}.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest_file).unwrap()).unwrap();
    assert_eq!(manifest["tool"], "qwalk");
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(manifest["threads"], 3);
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(manifest["command"]["subcommand"], "phase");
    assert_eq!(manifest["command"]["theta1_axis"], "0.1:0.4:4");
    assert_eq!(manifest["command"]["n"], 300);

    ok(&["rerun", &manifest_file, "-o", &second]);
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn rerun_simulate_and_limit() {
    let dir = TempDir::new().unwrap();
    for (name, cmd) in [
        (
            "s",
            vec![
                "simulate",
                "--theta1",
                "0.3",
                "--theta2",
                "-0.2",
                "--q",
                HALF,
                "--t",
                "40",
                "--protocol",
                "yy",
            ],
        ),
        (
            "l",
            vec![
                "limit", "--theta1", "0.3", "--theta2", "0.2", "--q", THIRDS, "--radius", "15",
            ],
        ),
    ] {
        let a = path(&dir, &format!("{name}1.csv"));
        let b = path(&dir, &format!("{name}2.csv"));
        let mut args = cmd.clone();
        args.extend(["-o", &a]);
        ok(&args);
        ok(&["rerun", &format!("{a}.manifest.json"), "--output", &b]);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn rerun_rejects_bad_manifest() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "bad.json");
    std::fs::write(&m, "{\"tool\":\"qwalk\"}").unwrap();
    assert_eq!(qwalk(&["rerun", &m]).status.code(), Some(2));
    assert_eq!(
        qwalk(&["rerun", &path(&dir, "missing.json")]).status.code(),
        Some(2)
    );
}
