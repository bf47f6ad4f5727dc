//! Exact statistics of the algebraic area enclosed by closed random walks on
//! the square lattice.
//!
//! Three independent engines produce the exact area counts `C(N, A)`:
//!
//! * [`walk::enumerate_counts`] walks every closed path (small `N` oracle),
//! * [`dp::dp_counts`] runs an exact dynamic program over `(x, y, 2A)` states,
//! * [`spectral::invert_counts`] evaluates the trace per unit area of powers of
//!   the Harper operator at rational flux and inverts the resulting
//!   generating function by a discrete Fourier transform.
//!
//! [`asymptotics`] holds the closed-form side: the number of closed walks,
//! the Landau-level expansion of the trace, the limit density
//! `π / cosh²(2πa)` and its `1/N` correction.

pub mod asymptotics;
pub mod cli;
pub mod distribution;
pub mod dp;
mod error;
pub mod output;
pub mod parallel;
pub mod quadrature;
pub mod spectral;
pub mod walk;

pub use distribution::AreaDistribution;
pub use error::{Error, Result};
pub use spectral::{RationalFlux, TraceValue, PHASE_CONSTANT};
pub use walk::{SignedArea, Step, Walk};
