//! Physics outputs assembled from the two underlying routes: spectra
//! Theta(k,t) and Theta(k,infinity), survival curves theta(t) at all time
//! scales (oracle for moderate t, residues + Hankel branch-cut quadrature
//! for large t), resonance peak tables, decay-rate and tail fits, and the
//! small-alpha closed form.

mod cuts;
mod fits;
mod peaks;
mod spectrum;
mod survival;
mod unitarity;

pub use cuts::{cut_discontinuity, CutTable, LargeTimeTheta};
pub use fits::{fit_decay_rate, fit_tail_exponent, tail_power_fit};
pub use peaks::{find_peaks, Peak, PeakTable};
pub use spectrum::{
    small_alpha_closed_form, spectrum_finite_laplace, spectrum_finite_time,
    spectrum_infinite_time, theta_big_prefactor, Method, SpectrumSlice, TimeSpec,
};
pub use survival::{survival_curve, theta_laplace_line, SurvivalCurve};
pub use unitarity::{unitarity_defect, unitarity_defect_with};

#[derive(Debug, thiserror::Error)]
pub enum ObsError {
    #[error(transparent)]
    Kernel(#[from] kernel_math::KernelError),
    #[error(transparent)]
    Solver(#[from] lattice_solver::SolverError),
    #[error(transparent)]
    Oracle(#[from] volterra_oracle::OracleError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("outside the stated regime: {0}")]
    Regime(String),
    #[error("fit window rejected: {0}")]
    Window(String),
    #[error("route stitching mismatch {mismatch:.3e} at t = {t} (tolerance {tol:.1e})")]
    Inconsistent { t: f64, mismatch: f64, tol: f64 },
    #[error("peak near k^2 = {k2:.6} unresolved after refinement")]
    Unresolved { k2: f64 },
}

pub type Result<T> = std::result::Result<T, ObsError>;
