use std::f64::consts::TAU;

use rayon::prelude::*;

use super::{BlochMatrix, RationalFlux};
use crate::asymptotics::LandauLevel;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Top,
    Bottom,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Top => 1.0,
            Branch::Bottom => -1.0,
        }
    }
}

/// One band-edge sub-band measured on the Bloch spectrum next to its
/// Landau-level prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauComparison {
    pub branch: Branch,
    pub level: u32,
    /// Sub-band energy averaged over the k-grid.
    pub measured: f64,
    pub predicted: f64,
    /// `measured − predicted`.
    pub deviation: f64,
    pub band_width: f64,
    /// `false` when this sub-band touches the next one inward.
    pub separated: bool,
}

/// Compares the outermost `num_levels` sub-bands on both edges with the
/// Landau-level energies, sampling the zone on a 3 × 3 grid.
pub fn landau_edge_check(flux: RationalFlux, num_levels: u32) -> Result<Vec<LandauComparison>> {
    landau_edge_check_on_grid(flux, num_levels, 3)
}

pub fn landau_edge_check_on_grid(
    flux: RationalFlux,
    num_levels: u32,
    grid: usize,
) -> Result<Vec<LandauComparison>> {
    let q = flux.q() as usize;
    let levels = num_levels as usize;
    if grid == 0 || (2 * (levels + 1) > q && flux.p() != 0) {
        return Err(Error::InvalidFlux {
            p: flux.p() as i64,
            q: flux.q() as i64,
            reason: "too few bands for the requested number of levels",
        });
    }
    let spectra: Vec<Vec<f64>> = (0..grid * grid)
        .into_par_iter()
        .map(|idx| {
            let k1 = TAU * (idx / grid) as f64 / grid as f64;
            let k2 = TAU * (idx % grid) as f64 / grid as f64;
            BlochMatrix::new(flux, k1, k2).eigenvalues()
        })
        .collect::<Result<_>>()?;

    // Band edges are only meaningful for p = 1 sub-bands; zero flux has one
    // band whose maximum sits at the zone centre.
    if flux.p() == 0 {
        let top = spectra
            .iter()
            .map(|s| s[s.len() - 1])
            .fold(f64::MIN, f64::max);
        let bottom = spectra.iter().map(|s| s[0]).fold(f64::MAX, f64::min);
        return Ok(vec![
            edge_only(Branch::Top, top),
            edge_only(Branch::Bottom, bottom),
        ]);
    }

    let band = |branch: Branch, level: usize| -> Vec<f64> {
        spectra
            .iter()
            .map(|s| match branch {
                Branch::Top => s[q - 1 - level],
                Branch::Bottom => s[level],
            })
            .collect()
    };
    let gamma = flux.gamma();
    let mut out = Vec::with_capacity(2 * levels);
    for branch in [Branch::Top, Branch::Bottom] {
        for level in 0..levels {
            let this = band(branch, level);
            let inner = band(branch, level + 1);
            let measured = this.iter().sum::<f64>() / this.len() as f64;
            let (lo, hi) = bounds(&this);
            let (ilo, ihi) = bounds(&inner);
            let separated = match branch {
                Branch::Top => lo > ihi,
                Branch::Bottom => hi < ilo,
            };
            let predicted = branch.sign() * LandauLevel::new(level as u32).energy(gamma);
            out.push(LandauComparison {
                branch,
                level: level as u32,
                measured,
                predicted,
                deviation: measured - predicted,
                band_width: hi - lo,
                separated,
            });
        }
    }
    Ok(out)
}

fn edge_only(branch: Branch, measured: f64) -> LandauComparison {
    let predicted = branch.sign() * LandauLevel::new(0).energy(0.0);
    LandauComparison {
        branch,
        level: 0,
        measured,
        predicted,
        deviation: measured - predicted,
        band_width: 0.0,
        separated: true,
    }
}

fn bounds(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_flux_edge_is_four() {
        let r = landau_edge_check_on_grid(RationalFlux::ZERO, 1, 4).unwrap();
        assert!((r[0].measured - 4.0).abs() < 1e-12);
        assert!((r[1].measured + 4.0).abs() < 1e-12);
    }

    #[test]
    fn small_flux_levels() {
        let f = RationalFlux::new(1, 200).unwrap();
        let gamma = std::f64::consts::PI / 100.0;
        let r = landau_edge_check(f, 2).unwrap();
        let top0 = &r[0];
        assert!((top0.predicted - (4.0 - gamma + gamma * gamma / 8.0)).abs() < 1e-15);
        let top1 = &r[1];
        assert!((top1.predicted - (4.0 - 3.0 * gamma + 10.0 * gamma * gamma / 16.0)).abs() < 1e-15);
        for c in &r {
            assert!(c.separated);
            assert!(c.band_width < 1e-10);
            assert!(c.deviation.abs() <= gamma.powi(3), "{c:?}");
        }
        // particle-hole symmetry of the spectrum
        assert!((r[0].measured + r[2].measured).abs() < 1e-10);
    }

    #[test]
    fn too_many_levels_rejected() {
        assert!(landau_edge_check(RationalFlux::new(1, 4).unwrap(), 3).is_err());
    }
}
