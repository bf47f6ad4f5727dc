use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{BlochMatrix, RationalFlux};
use crate::output::fmt_f64;
use crate::walk::check_even;
use crate::{Error, Result};

/// `tr(H^N)` per unit area at a given flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceValue {
    pub n: u32,
    pub flux: RationalFlux,
    pub value: Complex64,
    /// Quadrature nodes per Brillouin-zone axis.
    pub grid: usize,
}

impl TraceValue {
    pub fn imaginary_residue_ok(&self) -> bool {
        self.value.im.abs() <= 1e-9 * self.value.norm() + 1e-9
    }
}

/// Trace per unit area of `H^N` on the minimal exact grid of `N + 1` nodes
/// per axis.
///
/// `tr M(k)^N` is a trigonometric polynomial of degree at most `N` in each
/// quasimomentum, so the uniform-grid average is exact up to rounding.
pub fn trace_power(n: u32, flux: RationalFlux) -> Result<TraceValue> {
    trace_power_on_grid(n, flux, n as usize + 1)
}

pub fn trace_power_on_grid(n: u32, flux: RationalFlux, grid: usize) -> Result<TraceValue> {
    check_even(n)?;
    if grid < n as usize + 1 {
        return Err(Error::Quadrature(format!(
            "grid {grid} is below the exact size N + 1 = {}",
            n + 1
        )));
    }
    let nodes = grid * grid;
    let per_node: Vec<Result<f64>> = (0..nodes)
        .into_par_iter()
        .map(|idx| {
            let k1 = TAU * (idx / grid) as f64 / grid as f64;
            let k2 = TAU * (idx % grid) as f64 / grid as f64;
            let values = BlochMatrix::new(flux, k1, k2).eigenvalues()?;
            Ok(values.iter().map(|v| v.powi(n as i32)).sum())
        })
        .collect();
    // Fixed summation order keeps the result independent of the pool size.
    let mut sum = 0.0;
    for v in per_node {
        sum += v?;
    }
    let value = Complex64::new(sum / (nodes as f64 * flux.q() as f64), 0.0);
    let tv = TraceValue {
        n,
        flux,
        value,
        grid,
    };
    if !tv.imaginary_residue_ok() {
        return Err(Error::ImaginaryResidue {
            re: value.re,
            im: value.im,
        });
    }
    Ok(tv)
}

/// CSV audit table with header `N,p,q,re,im,grid`.
pub fn trace_table_csv(rows: &[TraceValue]) -> String {
    let mut out = String::from("N,p,q,re,im,grid\n");
    for t in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            t.n,
            t.flux.p(),
            t.flux.q(),
            fmt_f64(t.value.re),
            fmt_f64(t.value.im),
            t.grid
        )
        .unwrap();
    }
    out
}
