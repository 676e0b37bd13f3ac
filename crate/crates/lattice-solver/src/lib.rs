//! Laplace-domain solvers: the two-step lattice recurrences behind Phi(q)
//! (functional equation) and g_n (wavefunction boundary data), solved by a
//! step-doubling scheme and by continued fractions, plus resonance location.

mod coeffs;
mod params;
mod phi;
mod resonance;
mod solver;

pub use coeffs::{family_coeffs, functional_coeffs_from_roots, Coeffs, Family};
pub use params::ModelParams;
pub use phi::{evaluate_phi, evaluate_phi_raw, reduce_q};
pub use resonance::{default_pole_guess, find_resonance, residue_array, Resonance};
pub use solver::{
    solve_continued_fraction, solve_doubling, solve_functional_equation, LatticeSolution,
};

use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Kernel(#[from] kernel_math::KernelError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("coefficient at site {0} is singular or non-finite")]
    SingularCoefficient(i64),
    #[error("doubling did not converge: residual {residual:.3e} at depth {depth}")]
    NoConvergence { depth: usize, residual: f64 },
    #[error("continued fraction stagnated: last convergents differ by {0:.3e}")]
    Stagnation(f64),
    #[error("evaluation at q = {q} is within {dist:.3e} of a resonance pole")]
    NearPole { q: Complex64, dist: f64, resonance: Box<Resonance> },
    #[error("pole search escaped the starting cell (reached {0})")]
    SearchEscaped(Complex64),
    #[error("cusp regime (1/omega within 1e-3 of an integer): no isolated exponential pole")]
    CuspRegime,
    #[error("window {0} too small for requested site {1}")]
    WindowTooSmall(usize, i64),
}

pub type Result<T> = std::result::Result<T, SolverError>;
