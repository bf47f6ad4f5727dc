use nalgebra::DMatrix;
use num_complex::Complex64;

use super::RationalFlux;
use crate::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const SPECTRUM_SLACK: f64 = 1e-9;

/// `q × q` Bloch representation of the Harper operator at quasimomentum
/// `(k1, k2)`.
///
/// Row `n` carries the on-site term `2cos(k2 + nγ)` and hops `e^{+ik1}` to
/// `n + 1` and `e^{−ik1}` to `n − 1`, both taken cyclically mod `q`.
#[derive(Debug, Clone)]
pub struct BlochMatrix {
    flux: RationalFlux,
    k1: f64,
    k2: f64,
    entries: DMatrix<Complex64>,
}

impl BlochMatrix {
    pub fn new(flux: RationalFlux, k1: f64, k2: f64) -> Self {
        let q = flux.q() as usize;
        let gamma = flux.gamma();
        let hop = Complex64::from_polar(1.0, k1);
        // Lower triangle (and diagonal) only; the upper half is its mirror.
        let mut lower = DMatrix::<Complex64>::zeros(q, q);
        for n in 0..q {
            lower[(n, n)] += Complex64::new(2.0 * (k2 + n as f64 * gamma).cos(), 0.0);
            let m = (n + 1) % q;
            if m == n {
                lower[(n, n)] += hop + hop.conj();
            } else if n > m {
                lower[(n, m)] += hop;
            } else {
                lower[(m, n)] += hop.conj();
            }
        }
        let mut entries = lower;
        for i in 0..q {
            entries[(i, i)].im = 0.0;
            for j in 0..i {
                entries[(j, i)] = entries[(i, j)].conj();
            }
        }
        BlochMatrix {
            flux,
            k1,
            k2,
            entries,
        }
    }

    pub fn flux(&self) -> RationalFlux {
        self.flux
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.entries;
        let q = m.nrows();
        let mut worst = 0.0f64;
        for i in 0..q {
            for j in 0..q {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    ///
    /// The decomposition is checked against the first two trace identities
    /// (`Σλ = tr M`, `Σλ² = ‖M‖_F²`) and the spectral bound `|λ| ≤ 4`; any
    /// violation is reported as a failed decomposition.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        debug_assert!(self.hermitian_defect() <= HERMITIAN_TOL);
        let mut values: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);

        let trace: f64 = (0..self.dim()).map(|i| self.entries[(i, i)].re).sum();
        let frobenius: f64 = self.entries.iter().map(|z| z.norm_sqr()).sum();
        let sum: f64 = values.iter().sum();
        let sum_sq: f64 = values.iter().map(|v| v * v).sum();
        let scale = 1e-10 * (1.0 + frobenius);
        let ok = values
            .iter()
            .all(|v| v.is_finite() && v.abs() <= 4.0 + SPECTRUM_SLACK)
            && (sum - trace).abs() <= scale
            && (sum_sq - frobenius).abs() <= scale;
        if !ok {
            return Err(Error::Eigen {
                p: self.flux.p(),
                q: self.flux.q(),
                k1: self.k1,
                k2: self.k2,
            });
        }
        Ok(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn zero_flux_is_the_free_symbol() {
        for &(k1, k2) in &[(0.0, 0.0), (0.3, 1.7), (2.0, -4.0)] {
            let m = BlochMatrix::new(RationalFlux::ZERO, k1, k2);
            assert_eq!(m.dim(), 1);
            let e = m.eigenvalues().unwrap();
            assert!((e[0] - (2.0 * k1.cos() + 2.0 * k2.cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn half_flux_at_origin() {
        let m = BlochMatrix::new(RationalFlux::new(1, 2).unwrap(), 0.0, 0.0);
        let expect = [[2.0, 2.0], [2.0, -2.0]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!((m.entries()[(i, j)] - Complex64::new(v, 0.0)).norm() < 1e-14);
            }
        }
        let e = m.eigenvalues().unwrap();
        let r = 2.0 * 2f64.sqrt();
        assert!((e[0] + r).abs() < 1e-13 && (e[1] - r).abs() < 1e-13);
    }

    #[test]
    fn hermitian_and_bounded() {
        for &(p, q) in &[(1, 3), (2, 5), (3, 7), (1, 12), (5, 8)] {
            let f = RationalFlux::new(p, q).unwrap();
            for a in 0..5 {
                for b in 0..5 {
                    let m = BlochMatrix::new(f, TAU * a as f64 / 5.0 + 0.1, TAU * b as f64 / 5.0);
                    assert!(m.hermitian_defect() <= 1e-12);
                    let e = m.eigenvalues().unwrap();
                    assert_eq!(e.len(), q as usize);
                    assert!(*e.last().unwrap() <= 4.0 + 1e-9);
                    assert!(e[0] >= -4.0 - 1e-9);
                }
            }
        }
    }
}
