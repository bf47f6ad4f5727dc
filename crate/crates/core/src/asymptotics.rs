//! Closed forms and large-`N` expansions.
//!
//! Everything that grows like `4^N` is evaluated through logarithms; the
//! exported quantities are ratios to the prefactor `4^{N+1} / (2πN)` or
//! normalised characteristic functions and densities.

use std::f64::consts::{LN_2, PI, TAU};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::distribution::AreaDistribution;
use crate::output::fmt_f64;
use crate::quadrature::trapezoid;
use crate::walk::check_even;
use crate::{Error, Result};

const SERIES_THRESHOLD: f64 = 1e-4;

/// `Ω_N = binomial(N, N/2)²`, the number of closed `N`-step walks.
pub fn omega_exact(n: u32) -> Result<BigUint> {
    check_even(n)?;
    let b: BigUint = num_integer::binomial(BigUint::from(n), BigUint::from(n / 2));
    Ok(&b * &b)
}

/// `ln(4^{N+1} / (2πN))`.
pub fn ln_omega_asymptotic(n: u32) -> Result<f64> {
    check_even(n)?;
    if n == 0 {
        return Err(Error::Parse("the asymptotic form needs N > 0".into()));
    }
    let n = f64::from(n);
    Ok((n + 1.0) * 2.0 * LN_2 - (TAU * n).ln())
}

/// `4^{N+1} / (2πN)`; overflows to infinity past `N ≈ 510`.
pub fn omega_asymptotic(n: u32) -> Result<f64> {
    ln_omega_asymptotic(n).map(f64::exp)
}

/// `Ω_N / (4^{N+1} / (2πN))`, evaluated in the log domain.
pub fn omega_ratio(n: u32) -> Result<f64> {
    Ok((ln_biguint(&omega_exact(n)?) - ln_omega_asymptotic(n)?).exp())
}

pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * LN_2
}

/// `u / sinh u` with `u = x/4`: the limit characteristic function of `a = A/N`.
///
/// Underflows to zero beyond `|x| ≈ 3000`.
pub fn characteristic_limit(x: f64) -> f64 {
    let u = x.abs() / 4.0;
    if x.abs() < SERIES_THRESHOLD {
        // 1 − u²/6 + 7u⁴/360
        let u2 = u * u;
        return 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    }
    if u > 20.0 {
        let e = (-u).exp();
        return 2.0 * u * e / (1.0 - e * e);
    }
    u / u.sinh()
}

/// `(u / sinh u)²` with `u = x/4`, the `1/N` bracket weight.
fn sinh_ratio_squared(x: f64) -> f64 {
    if x.abs() < SERIES_THRESHOLD {
        let u2 = x * x / 16.0;
        return 1.0 - u2 / 3.0 + u2 * u2 / 15.0;
    }
    let f = characteristic_limit(x);
    f * f
}

/// `T(H^N)|_{γ=x/N}` divided by `4^{N+1}/(2πN)`:
/// `(u/sinh u)·[1 − (1/2N)(u/sinh u)²]`.
pub fn trace_semiclassical_relative(n: u32, x: f64) -> Result<f64> {
    check_even(n)?;
    if n == 0 {
        return Err(Error::Parse("the semiclassical trace needs N > 0".into()));
    }
    Ok(characteristic_limit(x) * (1.0 - sinh_ratio_squared(x) / (2.0 * f64::from(n))))
}

/// Semiclassical trace `4^{N+1}/(2πN) · (u/sinh u) · [1 − (1/2N)(u/sinh u)²]`.
pub fn trace_semiclassical(n: u32, x: f64) -> Result<f64> {
    let rel = trace_semiclassical_relative(n, x)?;
    Ok((ln_omega_asymptotic(n)? + rel.ln()).exp())
}

/// The `1/N`-corrected characteristic function of `a = A/N`: the
/// semiclassical trace normalised by its own value at `x = 0`, so that
/// `Φ_N(0) = 1`.
pub fn characteristic_corrected(n: u32, x: f64) -> Result<f64> {
    let n_f = 2.0 * f64::from(n);
    Ok(trace_semiclassical_relative(n, x)? / (1.0 - 1.0 / n_f))
}

/// `Σ_A (C(N, A)/Ω_N) e^{ixA/N}`; real by reflection symmetry.
pub fn exact_characteristic(d: &AreaDistribution, x: f64) -> f64 {
    let n = f64::from(d.n().max(1));
    d.probabilities()
        .iter()
        .map(|&(a, p)| p * (x * a as f64 / n).cos())
        .sum()
}

/// `π / cosh²(2πa)`.
pub fn density_limit(a: f64) -> f64 {
    // 1/cosh²(y) = 4e^{−2y}/(1 + e^{−2y})², exact at a = 0 and overflow-free.
    let e = (-4.0 * PI * a.abs()).exp();
    PI * 4.0 * e / ((1.0 + e) * (1.0 + e))
}

/// Uniform trapezoid settings for the cosine inversion of a characteristic
/// function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGrid {
    pub x_max: f64,
    pub step: f64,
}

impl Default for FourierGrid {
    fn default() -> Self {
        FourierGrid {
            x_max: 160.0,
            step: 0.05,
        }
    }
}

const TAIL_TOL: f64 = 1e-12;
const HALVING_TOL: f64 = 1e-9;

/// `(1/π) ∫_0^{X} φ(x) cos(xa) dx` for an even `φ`, with a tail check at
/// `X` and a step-halving error estimate.
pub fn invert_even_characteristic(
    phi: impl Fn(f64) -> f64,
    a: f64,
    grid: FourierGrid,
) -> Result<f64> {
    let tail = phi(grid.x_max).abs();
    if tail > TAIL_TOL {
        return Err(Error::Quadrature(format!(
            "integrand tail {tail:e} at x = {} exceeds {TAIL_TOL:e}",
            grid.x_max
        )));
    }
    let panels = (grid.x_max / grid.step).round() as usize;
    let integrand = |x: f64| phi(x) * (x * a).cos();
    let fine = trapezoid(integrand, 0.0, grid.x_max, panels);
    let coarse = trapezoid(integrand, 0.0, grid.x_max, (panels / 2).max(1));
    if (fine - coarse).abs() > HALVING_TOL {
        return Err(Error::Quadrature(format!(
            "step halving moved the result by {:e} at a = {a}",
            (fine - coarse).abs()
        )));
    }
    Ok(fine / PI)
}

/// Density of `a = A/N` including the `1/N` correction.
pub fn density_corrected(n: u32, a: f64) -> Result<f64> {
    density_corrected_on(n, a, FourierGrid::default())
}

pub fn density_corrected_on(n: u32, a: f64, grid: FourierGrid) -> Result<f64> {
    check_even(n)?;
    if n == 0 {
        return Err(Error::Parse("the corrected density needs N > 0".into()));
    }
    let scale = 1.0 / (1.0 - 1.0 / (2.0 * f64::from(n)));
    let inv_2n = 1.0 / (2.0 * f64::from(n));
    invert_even_characteristic(
        |x| characteristic_limit(x) * (1.0 - inv_2n * sinh_ratio_squared(x)) * scale,
        a,
        grid,
    )
}

/// Which approximation a curve or sample set represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveOrder {
    Limit,
    Corrected(u32),
    Empirical(u32),
}

impl CurveOrder {
    pub fn tag(&self) -> String {
        match self {
            CurveOrder::Limit => "limit".to_string(),
            CurveOrder::Corrected(n) => format!("corrected-N{n}"),
            CurveOrder::Empirical(n) => format!("empirical-N{n}"),
        }
    }
}

/// Density values on a grid of scaled areas `a = A/N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCurve {
    pub order: CurveOrder,
    pub points: Vec<(f64, f64)>,
}

/// Characteristic-function values on a grid of `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacteristicSamples {
    pub order: CurveOrder,
    pub points: Vec<(f64, f64)>,
}

fn tagged_csv(header: &str, tag: &str, points: &[(f64, f64)]) -> String {
    let mut out = format!("order,{header}\n");
    for &(u, v) in points {
        writeln!(out, "{tag},{},{}", fmt_f64(u), fmt_f64(v)).unwrap();
    }
    out
}

impl DensityCurve {
    /// CSV with header `order,a,p`.
    pub fn to_csv(&self) -> String {
        tagged_csv("a,p", &self.order.tag(), &self.points)
    }

    pub fn to_json(&self) -> String {
        json_curve(&self.order, "a", "p", &self.points)
    }

    /// Evaluates `density_limit` or `density_corrected` on `[−a_max, a_max]`.
    pub fn sample(order: CurveOrder, a_max: f64, step: f64) -> Result<Self> {
        let points = symmetric_grid(a_max, step)?
            .into_iter()
            .map(|a| {
                let p = match order {
                    CurveOrder::Limit => density_limit(a),
                    CurveOrder::Corrected(n) => density_corrected(n, a)?,
                    CurveOrder::Empirical(_) => {
                        return Err(Error::Parse("empirical curves come from counts".into()))
                    }
                };
                Ok((a, p))
            })
            .collect::<Result<_>>()?;
        Ok(DensityCurve { order, points })
    }
}

impl CharacteristicSamples {
    /// CSV with header `order,x,phi`.
    pub fn to_csv(&self) -> String {
        tagged_csv("x,phi", &self.order.tag(), &self.points)
    }

    pub fn to_json(&self) -> String {
        json_curve(&self.order, "x", "phi", &self.points)
    }

    pub fn sample_limit(x_max: f64, step: f64) -> Result<Self> {
        let points = symmetric_grid(x_max, step)?
            .into_iter()
            .map(|x| (x, characteristic_limit(x)))
            .collect();
        Ok(CharacteristicSamples {
            order: CurveOrder::Limit,
            points,
        })
    }

    pub fn sample_corrected(n: u32, x_max: f64, step: f64) -> Result<Self> {
        let points = symmetric_grid(x_max, step)?
            .into_iter()
            .map(|x| Ok((x, characteristic_corrected(n, x)?)))
            .collect::<Result<_>>()?;
        Ok(CharacteristicSamples {
            order: CurveOrder::Corrected(n),
            points,
        })
    }

    pub fn sample_exact(d: &AreaDistribution, x_max: f64, step: f64) -> Result<Self> {
        let points = symmetric_grid(x_max, step)?
            .into_iter()
            .map(|x| (x, exact_characteristic(d, x)))
            .collect();
        Ok(CharacteristicSamples {
            order: CurveOrder::Empirical(d.n()),
            points,
        })
    }
}

fn json_curve(order: &CurveOrder, u: &str, v: &str, points: &[(f64, f64)]) -> String {
    let pts: Vec<serde_json::Value> = points
        .iter()
        .map(|&(a, b)| serde_json::json!({ u: a, v: b }))
        .collect();
    serde_json::json!({ "order": order.tag(), "points": pts }).to_string()
}

/// `−max, −max + step, …, max` with the node count fixed by integer rounding.
pub fn symmetric_grid(max: f64, step: f64) -> Result<Vec<f64>> {
    if !(max >= 0.0 && step > 0.0 && max.is_finite()) {
        return Err(Error::Parse(format!("bad grid: max {max}, step {step}")));
    }
    let half = (max / step).round() as i64;
    Ok((-half..=half).map(|i| i as f64 * step).collect())
}

/// Lattice points `(A/N, N·C(N, A)/Ω_N)`: the density of `a` on the grid of
/// spacing `1/N`.
pub fn empirical_density(d: &AreaDistribution) -> DensityCurve {
    let n = f64::from(d.n().max(1));
    let points = d
        .probabilities()
        .iter()
        .map(|&(a, p)| (a as f64 / n, n * p))
        .collect();
    DensityCurve {
        order: CurveOrder::Empirical(d.n()),
        points,
    }
}

/// Band-edge Landau sublevel `ℓ` on the upper branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandauLevel {
    pub level: u32,
}

impl LandauLevel {
    pub fn new(level: u32) -> Self {
        LandauLevel { level }
    }

    /// `4 − γ(2ℓ+1) + (γ²/16)[1 + (2ℓ+1)²]`; the lower branch is its negative.
    pub fn energy(&self, gamma: f64) -> f64 {
        let u = f64::from(2 * self.level + 1);
        4.0 - gamma * u + gamma * gamma / 16.0 * (1.0 + u * u)
    }

    pub fn multiplicity_per_area(gamma: f64) -> f64 {
        gamma / TAU
    }
}

/// Highest level kept in the Landau sum: the expansion is summed while it is
/// still decreasing in `ℓ`, i.e. up to its minimum at `2ℓ + 1 = 8/γ`.
pub fn landau_cutoff(gamma: f64) -> u32 {
    if gamma <= 0.0 {
        return 0;
    }
    (((8.0 / gamma) - 1.0) / 2.0).floor().max(0.0) as u32
}

/// `Σ_± Σ_ℓ (E_ℓ^±)^N γ/2π` at `γ = x/N`, divided by `4^{N+1}/(2πN)`.
pub fn landau_trace_relative(n: u32, x: f64) -> Result<f64> {
    check_even(n)?;
    if n == 0 || x <= 0.0 {
        return Err(Error::Parse("the level sum needs N > 0 and x > 0".into()));
    }
    let gamma = x / f64::from(n);
    let weight = LandauLevel::multiplicity_per_area(gamma);
    let ln_pref_over_4n = (4.0 / (TAU * f64::from(n))).ln();
    let mut sum = 0.0;
    for level in 0..=landau_cutoff(gamma) {
        let e = LandauLevel::new(level).energy(gamma);
        if e <= 0.0 {
            break;
        }
        // both branches contribute equally for even N
        sum += 2.0 * (f64::from(n) * (e / 4.0).ln() - ln_pref_over_4n).exp() * weight;
    }
    Ok(sum)
}
