use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-area"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn counts_from_every_engine() {
    let expect = "area,count\n-1,4\n0,28\n1,4\n";
    for engine in ["dp", "spectral", "enumerate"] {
        let out = run(&["counts", "--n", "4", "--engine", engine]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(String::from_utf8_lossy(&out.stdout), expect);
    }
    let out = run(&["oracle", "--n", "4", "--format", "json"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "{\"N\":4,\"total\":\"36\",\"counts\":[[-1,\"4\"],[0,\"28\"],[1,\"4\"]]}\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["counts", "--n", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["counts", "--n", "16", "--engine", "enumerate"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["counts", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["counts", "--n", "60"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n6.csv");
    let out = run(&["counts", "--n", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 400);
}

#[test]
fn verify_small_budget_passes_quickly() {
    let start = Instant::now();
    let out = run(&["verify", "--max-n", "12"]);
    assert!(start.elapsed().as_secs() < 60);
    let report = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{report}");
    assert!(!report.contains("FAIL"));
    assert!(report.contains("PASS phase calibration"));
}

#[test]
fn verify_detects_wrong_phase_constant() {
    let out = run(&["verify", "--max-n", "8", "--phase-constant", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("FAIL phase calibration"), "{err}");
    assert!(err.contains("FAIL spectral == dp, N = 8"), "{err}");
}

#[test]
fn calibrate_reports_constant() {
    let out = run(&["calibrate"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("phase constant: 2\n"));
}

#[test]
fn figure_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figure1", "--out", dir.path().to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "empirical_n16.csv",
        "empirical_n18.csv",
        "empirical_n20.csv",
        "limit.csv",
        "corrected_n20.csv",
        "corrected_n40.csv",
        "figure1.gp",
    ] {
        assert!(Path::new(&dir.path().join(f)).exists(), "{f}");
    }
    let script = std::fs::read_to_string(dir.path().join("figure1.gp")).unwrap();
    assert!(script.contains("'limit.csv'") && script.contains("dt 2"));
    let limit = std::fs::read_to_string(dir.path().join("limit.csv")).unwrap();
    assert!(limit.contains("\nlimit,0.0000000000000000e0,3.1415926535897931e0\n"));
    assert!(limit.lines().all(|l| !l.ends_with('\r')));
}

#[test]
fn thread_env_variable_is_honoured() {
    let a = bin()
        .args(["density", "--n", "10"])
        .env("LATTICE_AREA_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(["density", "--n", "10", "--threads", "3"])
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
