use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{trace_power, RationalFlux, PHASE_CONSTANT};
use crate::asymptotics::omega_exact;
use crate::distribution::AreaDistribution;
use crate::walk::{check_even, max_area};
use crate::{Error, Result};

/// Largest `N` whose counts (`≤ 4^N`) survive nearest-integer rounding in
/// double precision.
pub const SPECTRAL_INTEGER_MAX_N: u32 = 24;

const ROUNDING_GATE: f64 = 0.25;

/// Raw Fourier coefficients recovered from the flux-sampled traces.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub n: u32,
    pub constant: u32,
    /// `(A, C(N, A))` before rounding, for `|A| ≤ max_area(N)`.
    pub coefficients: Vec<(i64, Complex64)>,
}

impl Inversion {
    /// Samples `G_j = T(H^N)` at the `M = 2 A_max + 1` phases `θ_j = 2πj/M`
    /// and applies the inverse DFT `C(A) = M⁻¹ Σ_j G_j e^{−iθ_j A}`.
    ///
    /// Phase `θ` is realised by the flux with `cγ/2 = θ`, i.e. the exact
    /// fraction `p/q = 2j / (cM)`. Only `j ≤ A_max` is evaluated; the rest
    /// follow from `G_{M−j} = conj(G_j)`.
    pub fn compute(n: u32, constant: u32) -> Result<Self> {
        check_even(n)?;
        let a_max = max_area(n)?;
        let m = (2 * a_max + 1) as u64;
        let half: Vec<Complex64> = (0..=a_max as u64)
            .into_par_iter()
            .map(|j| {
                let flux = RationalFlux::new(2 * j, u64::from(constant) * m)?;
                trace_power(n, flux).map(|t| t.value)
            })
            .collect::<Result<_>>()?;
        let samples: Vec<Complex64> = (0..m as usize)
            .map(|j| {
                if j <= a_max as usize {
                    half[j]
                } else {
                    half[m as usize - j].conj()
                }
            })
            .collect();
        let coefficients = (-a_max..=a_max)
            .map(|a| {
                let c: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, g)| {
                        // reduce j*a mod M before scaling to keep the angle exact
                        let k = ((j as i64 * a).rem_euclid(m as i64)) as f64;
                        g * Complex64::from_polar(1.0, -TAU * k / m as f64)
                    })
                    .sum();
                (a, c / m as f64)
            })
            .collect();
        Ok(Inversion {
            n,
            constant,
            coefficients,
        })
    }

    pub fn max_rounding_residue(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|(_, c)| (c.re - c.re.round()).abs().max(c.im.abs()))
            .fold(0.0, f64::max)
    }
}

/// Exact counts recovered spectrally with the calibrated phase constant.
pub fn invert_counts(n: u32) -> Result<AreaDistribution> {
    invert_counts_with(n, PHASE_CONSTANT).map(|(d, _)| d)
}

/// Spectral counts for an explicit phase constant, with the worst rounding
/// residue. Fails if any coefficient is more than `0.25` from an integer or
/// the recovered total differs from `binomial(N, N/2)²`.
pub fn invert_counts_with(n: u32, constant: u32) -> Result<(AreaDistribution, f64)> {
    check_even(n)?;
    if n > SPECTRAL_INTEGER_MAX_N {
        return Err(Error::Budget {
            engine: "spectral",
            n,
            max: SPECTRAL_INTEGER_MAX_N,
        });
    }
    let inv = Inversion::compute(n, constant)?;
    let mut counts = BTreeMap::new();
    let mut worst = 0.0f64;
    for &(a, c) in &inv.coefficients {
        let rounded = c.re.round();
        let residue = (c.re - rounded).abs().max(c.im.abs());
        if residue > ROUNDING_GATE || rounded < 0.0 {
            return Err(Error::RoundingResidue {
                area: a,
                value: c.re,
                residue,
            });
        }
        worst = worst.max(residue);
        counts.insert(a, BigUint::from(rounded as u64));
    }
    let d = AreaDistribution::new(n, counts)?;
    let expected = omega_exact(n)?;
    if d.total() != &expected {
        return Err(Error::Inconsistent(format!(
            "spectral total {} != binomial(N, N/2)^2 = {expected} at N = {n}",
            d.total()
        )));
    }
    Ok((d, worst))
}

/// Normalised probabilities for `N` beyond the integer budget.
#[derive(Debug, Clone)]
pub struct ProbabilityEstimate {
    pub n: u32,
    pub probabilities: Vec<(i64, f64)>,
    /// Largest of: imaginary leakage, negativity, and total-mass defect,
    /// all relative to `Ω_N`.
    pub error_estimate: f64,
}

pub fn invert_probabilities(n: u32) -> Result<ProbabilityEstimate> {
    let inv = Inversion::compute(n, PHASE_CONSTANT)?;
    let omega = omega_exact(n)?.to_f64().unwrap_or(f64::INFINITY);
    let probabilities: Vec<(i64, f64)> = inv
        .coefficients
        .iter()
        .map(|&(a, c)| (a, c.re / omega))
        .collect();
    let leak = inv
        .coefficients
        .iter()
        .map(|(_, c)| c.im.abs() / omega)
        .fold(0.0, f64::max);
    let negative = probabilities
        .iter()
        .map(|&(_, p)| (-p).max(0.0))
        .fold(0.0, f64::max);
    let mass: f64 = probabilities.iter().map(|&(_, p)| p).sum();
    Ok(ProbabilityEstimate {
        n,
        probabilities,
        error_estimate: leak.max(negative).max((mass - 1.0).abs()),
    })
}
