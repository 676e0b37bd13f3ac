//! psi(x,t) by three routes that must agree: numerical inversion of the
//! Laplace transform psi_hat(x,p) along a contour hugging the singular set
//! (moderate t), the stationary-phase ray formula for x ~ vt, and spectral
//! reconstruction from theta(t) and Theta(k,t).

mod field;
mod invert;
mod ray;
mod slice;
mod spectral;

pub use field::{LaplaceField, SqrtConvention};
pub use invert::invert_moderate;
pub use ray::asymptotic_ray;
pub use slice::{PsiMethod, WavefieldSlice};
pub use spectral::spectral_reconstruct;

#[derive(Debug, thiserror::Error)]
pub enum WaveError {
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
    #[error("square-root convention mismatch: {0}")]
    Convention(String),
    #[error(
        "contour quadrature not converged: worst probe mismatch {worst:.3e} \
         (tolerance {tol:.1e}) with {m} sigma columns, n window {nmax}, \
         contour height {c:.3e}"
    )]
    Quadrature { m: usize, nmax: usize, c: f64, worst: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, WaveError>;
