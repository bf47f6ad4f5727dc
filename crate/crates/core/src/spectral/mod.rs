//! Harper operator at rational flux and the trace-per-unit-area engine.
//!
//! At flux `γ = 2πp/q` the Harper operator is block-diagonalised into a
//! family of `q × q` Hermitian Bloch matrices over the Brillouin zone. The
//! trace per unit area of `H^N` is the zone average of `tr M(k)^N / q`, and it
//! equals the phase-weighted number of closed walks,
//! `Σ_A C(N, A) e^{i c γ A / 2}`, with the phase constant `c` fixed by
//! [`calibrate_phase`].

mod bloch;
mod calibrate;
mod flux;
mod invert;
mod landau;
mod trace;

pub use bloch::BlochMatrix;
pub use calibrate::{calibrate_phase, predicted_trace, Calibration, PHASE_CONSTANT};
pub use flux::RationalFlux;
pub use invert::{
    invert_counts, invert_counts_with, invert_probabilities, Inversion, ProbabilityEstimate,
    SPECTRAL_INTEGER_MAX_N,
};
pub use landau::{landau_edge_check, landau_edge_check_on_grid, Branch, LandauComparison};
pub use trace::{trace_power, trace_power_on_grid, trace_table_csv, TraceValue};
