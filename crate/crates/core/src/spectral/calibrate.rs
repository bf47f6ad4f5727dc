use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{trace_power, RationalFlux};
use crate::distribution::AreaDistribution;
use crate::walk::enumerate_counts;
use crate::{Error, Result};

/// The phase constant `c` in `T(H^N) = Σ_A C(N, A) e^{i c γ A / 2}` for the
/// Bloch construction in this crate: each closed walk picks up `e^{iγA}`.
/// Re-derived by [`calibrate_phase`] and asserted in the tests.
pub const PHASE_CONSTANT: u32 = 2;

const CANDIDATES: [u32; 2] = [1, 2];
const MATCH_TOL: f64 = 1e-9;

/// Outcome of fitting the `N = 4` traces against the enumerated counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub constant: u32,
    /// Worst absolute residual per candidate constant.
    pub residuals: Vec<(u32, f64)>,
    pub fluxes: Vec<RationalFlux>,
}

/// `Σ_A C(N, A) e^{i c γ A / 2}` for a known distribution.
pub fn predicted_trace(d: &AreaDistribution, constant: u32, flux: RationalFlux) -> Complex64 {
    let half = f64::from(constant) * flux.gamma() / 2.0;
    d.counts()
        .iter()
        .map(|(&a, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), half * a as f64))
        .sum()
}

/// Determines which phase convention the Bloch construction realises.
pub fn calibrate_phase() -> Result<Calibration> {
    let counts = enumerate_counts(4)?;
    let fluxes: Vec<RationalFlux> = [(1, 2), (1, 3), (1, 4), (2, 5), (1, 6)]
        .iter()
        .map(|&(p, q)| RationalFlux::new(p, q))
        .collect::<Result<_>>()?;
    let traces: Vec<Complex64> = fluxes
        .iter()
        .map(|&f| trace_power(4, f).map(|t| t.value))
        .collect::<Result<_>>()?;
    let residuals: Vec<(u32, f64)> = CANDIDATES
        .iter()
        .map(|&c| {
            let worst = fluxes
                .iter()
                .zip(&traces)
                .map(|(&f, t)| (predicted_trace(&counts, c, f) - t).norm())
                .fold(0.0, f64::max);
            (c, worst)
        })
        .collect();
    let matching: Vec<u32> = residuals
        .iter()
        .filter(|(_, r)| *r <= MATCH_TOL)
        .map(|&(c, _)| c)
        .collect();
    match matching.as_slice() {
        [c] => Ok(Calibration {
            constant: *c,
            residuals,
            fluxes,
        }),
        _ => Err(Error::Calibration { residuals }),
    }
}
