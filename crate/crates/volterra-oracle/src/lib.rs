//! Time-domain route: product-integration solution of the weakly singular
//! Volterra equation
//!
//!   phi(t) = alpha sin(omega t) (1 + int_0^t phi(s) eta(t - s) ds),
//!
//! then theta(t) = 1 + 2i int_0^t phi and the finite-time spectrum
//! Theta(k,t) = sqrt(2/pi) |k|/(1 - i|k|) int_0^t phi(s) e^{i(1+k^2)s} ds.
//! Independent of the Laplace-domain lattice solver, so the two routes
//! cross-validate each other.

mod moments;
mod series;
mod transform;

pub use series::{solve_phi, solve_phi_with_step, PhiSeries};
pub use transform::{partial_transform, theta_big_from_phi, theta_from_phi};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Kernel(#[from] kernel_math::KernelError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("t = {t} outside the solved range [0, {t_max}]")]
    Range { t: f64, t_max: f64 },
    #[error("no convergence under mesh refinement; (h, est. error) history: {history:?}")]
    NoConvergence { history: Vec<(f64, f64)> },
}

pub type Result<T> = std::result::Result<T, OracleError>;
