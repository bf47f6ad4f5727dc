//! One test per acceptance criterion. Each prints a single
//! `[criterion k] PASS|FAIL ...` line before asserting.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use lattice_area::asymptotics::{
    characteristic_corrected, density_corrected, density_limit, empirical_density,
    exact_characteristic, omega_asymptotic, omega_exact,
};
use lattice_area::dp::dp_counts;
use lattice_area::quadrature::simpson;
use lattice_area::spectral::{
    invert_counts_with, landau_edge_check, trace_power, RationalFlux, PHASE_CONSTANT,
};
use lattice_area::walk::enumerate_counts;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

fn report(k: u32, ok: bool, detail: String) {
    println!(
        "[criterion {k}] {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {k}: {detail}");
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_1_engine_equivalence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in (0..=14).step_by(2) {
        if enumerate_counts(n).unwrap() != dp_counts(n).unwrap() {
            bad.push(format!("enumerate N={n}"));
        }
    }
    let mut worst = 0.0f64;
    for n in (0..=20).step_by(2) {
        match invert_counts_with(n, PHASE_CONSTANT) {
            Ok((s, residue)) => {
                worst = worst.max(residue);
                if s != dp_counts(n).unwrap() || residue >= 0.25 {
                    bad.push(format!("spectral N={n}"));
                }
            }
            Err(e) => bad.push(format!("spectral N={n}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        bad.is_empty() && secs < 600.0,
        format!("max rounding residue {worst:.3e}, {secs:.1}s, mismatches {bad:?}"),
    );
}

#[test]
fn criterion_2_closed_walk_total() {
    let mut bad = Vec::new();
    for n in (0..=30).step_by(2) {
        let b = binomial(n, n / 2);
        if dp_counts(n).unwrap().total() != &(&b * &b) {
            bad.push(format!("dp N={n}"));
        }
    }
    let mut worst = 0.0f64;
    for n in (2..=24).step_by(2) {
        let t = trace_power(n, RationalFlux::ZERO).unwrap().value.re;
        let rel = (t / omega_exact(n).unwrap().to_f64().unwrap() - 1.0).abs();
        worst = worst.max(rel);
        if rel > 1e-10 {
            bad.push(format!("trace N={n}"));
        }
    }
    report(
        2,
        bad.is_empty(),
        format!("worst trace relative error {worst:.3e}, mismatches {bad:?}"),
    );
}

#[test]
fn criterion_3_closed_walk_asymptotics() {
    let dev = |n: u32| {
        (omega_exact(n).unwrap().to_f64().unwrap() / omega_asymptotic(n).unwrap() - 1.0).abs()
    };
    let (d20, d40) = (dev(20), dev(40));
    let shrink = d20 / d40;
    report(
        3,
        d20 < 0.013 && shrink >= 3.5,
        format!("|ratio - 1| = {d20:.6} at N=20 (< 0.013), {d40:.6} at N=40, shrink {shrink:.3} (>= 3.5)"),
    );
}

#[test]
fn criterion_4_landau_sublevels() {
    let rows: Vec<_> = [100u64, 200, 400]
        .iter()
        .map(|&q| landau_edge_check(RationalFlux::new(1, q).unwrap(), 3).unwrap())
        .collect();
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for pair in rows.windows(2) {
        for (a, b) in pair[0].iter().zip(&pair[1]) {
            assert_eq!((a.branch, a.level), (b.branch, b.level));
            let shrink = a.deviation.abs() / b.deviation.abs();
            worst = worst.min(shrink);
            ok &= shrink >= 6.0 && a.separated && b.separated;
        }
    }
    ok &= rows.iter().all(|r| r.len() == 6);
    report(
        4,
        ok,
        format!("smallest shrink per q doubling {worst:.3} over l = 0..2, both edges (>= 6)"),
    );
}

#[test]
fn criterion_5_corrected_characteristic() {
    let xs = [1.0, 2.0, 4.0, 8.0];
    let ns = [16u32, 18, 20];
    let mut dev = BTreeMap::new();
    for &n in &ns {
        let d = dp_counts(n).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            let v = (exact_characteristic(&d, x) - characteristic_corrected(n, x).unwrap()).abs();
            dev.insert((n, i), v);
        }
    }
    let within = ns
        .iter()
        .all(|&n| (0..xs.len()).all(|i| dev[&(n, i)] <= 5.0 / f64::from(n * n)));
    // log-log slope between N = 16 and N = 20 at each x
    let slopes: Vec<f64> = (0..xs.len())
        .map(|i| -(dev[&(20, i)] / dev[&(16, i)]).ln() / (20f64 / 16.0).ln())
        .collect();
    let decaying =
        (0..xs.len()).all(|i| dev[&(16, i)] > dev[&(18, i)] && dev[&(18, i)] > dev[&(20, i)]);
    let trend = slopes.iter().all(|s| (1.5..=2.5).contains(s));
    let worst = ns
        .iter()
        .map(|&n| f64::from(n * n) * (0..4).map(|i| dev[&(n, i)]).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    report(
        5,
        within && decaying && trend,
        format!("max N^2 * deviation {worst:.3} (<= 5), decay exponents {slopes:.2?} (1.5..=2.5)"),
    );
}

#[test]
fn criterion_6_limit_law() {
    let mass = simpson(density_limit, -2.0, 2.0, 8000);
    let second = simpson(|a| a * a * density_limit(a), -2.0, 2.0, 8000);
    let at0 = density_limit(0.0);
    report(
        6,
        (mass - 1.0).abs() <= 1e-9
            && at0 == std::f64::consts::PI
            && (second - 1.0 / 48.0).abs() <= 1e-9,
        format!("mass {mass:.12}, P(0) = {at0:.17}, second moment {second:.12}"),
    );
}

#[test]
fn criterion_7_figure_curves() {
    let n = 20;
    let empirical = empirical_density(&dp_counts(n).unwrap());
    let at = |target: f64| {
        let &(a, p) = empirical
            .points
            .iter()
            .min_by(|x, y| (x.0 - target).abs().total_cmp(&(y.0 - target).abs()))
            .unwrap();
        (a, p)
    };
    let (_, p0) = at(0.0);
    let below = p0 < std::f64::consts::PI;
    let mut closer = Vec::new();
    for target in [0.0, 0.1, 0.2] {
        let (a, p) = at(target);
        let c = density_corrected(n, a).unwrap();
        let l = density_limit(a);
        closer.push((
            (c - p).abs() < (l - p).abs(),
            format!("a={a}: emp {p:.6} corr {c:.6} lim {l:.6}"),
        ));
    }
    let all_closer = closer.iter().all(|c| c.0);
    let detail: Vec<_> = closer.into_iter().map(|c| c.1).collect();
    report(
        7,
        below && all_closer,
        format!("empirical N=20 at 0 = {p0:.10} below pi: {below}; corrected closer everywhere: {all_closer}; {}", detail.join("; ")),
    );
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-area"))
}

fn figure_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_8_determinism() {
    let max = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .to_string();
    let mut verify = Vec::new();
    let mut figure = Vec::new();
    for threads in ["1", "4", max.as_str(), "1", max.as_str()] {
        let out = bin()
            .args(["verify", "--threads", threads])
            .output()
            .unwrap();
        verify.push((out.status.code(), out.stdout, out.stderr));
        let dir = tempfile::tempdir().unwrap();
        let out = bin()
            .current_dir(dir.path())
            .args(["figure1", "--threads", threads, "--out", "fig"])
            .output()
            .unwrap();
        assert!(out.status.success());
        figure.push((out.stdout, figure_bytes(&dir.path().join("fig"))));
    }
    let verify_same = verify.windows(2).all(|w| w[0] == w[1]);
    let figure_same = figure.windows(2).all(|w| w[0] == w[1]);
    report(
        8,
        verify_same && figure_same && verify[0].0 == Some(0),
        format!(
            "verify identical: {verify_same}, figure1 identical ({} files): {figure_same}, threads 1/4/{max}, repeated",
            figure[0].1.len()
        ),
    );
}
