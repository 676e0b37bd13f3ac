use crate::{Result, WaveError};
use kernel_math::{sqrt_lattice, HalfPlane};
use lattice_solver::{reduce_q, solve_functional_equation, Family, ModelParams};
use num_complex::Complex64;

/// Branch tag for sqrt(-ip). Eqs. (11)-(13) hold with the lattice convention
/// (Re sqrt > 0 on the right p half plane, -i sqrt|u| on the negative real
/// axis); assembling with the functional-equation branch would silently mix
/// Riemann sheets, so it is rejected outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtConvention {
    Lattice,
    Functional,
}

/// The Laplace field psi_hat(x,p): boundary data psi_hat(0,p) from the
/// lattice recurrence (Eq. 14) and the explicit x-dependence of Eq. (13).
#[derive(Debug, Clone)]
pub struct LaplaceField {
    pub params: ModelParams,
    pub convention: SqrtConvention,
}

impl LaplaceField {
    pub fn new(params: ModelParams) -> Self {
        Self { params, convention: SqrtConvention::Lattice }
    }

    pub fn with_convention(params: ModelParams, convention: SqrtConvention) -> Self {
        Self { params, convention }
    }

    fn check_convention(&self) -> Result<()> {
        if self.convention != SqrtConvention::Lattice {
            return Err(WaveError::Convention(
                "psi_hat assembly requires the lattice branch of sqrt(-ip)".into(),
            ));
        }
        Ok(())
    }

    /// Boundary data psi_hat(0, p) = g_n at q = ip reduced mod omega.
    /// Real q (boundary of the half plane) takes the limit from Re p > 0.
    pub fn psi_hat0(&self, p: Complex64) -> Result<Complex64> {
        self.check_convention()?;
        let q = Complex64::i() * p;
        let (sigma, n) = reduce_q(&self.params, q);
        let target = (n.unsigned_abs() as usize + 4).max(8);
        let sol = match solve_functional_equation(
            &self.params,
            Family::Lattice,
            sigma,
            target,
            HalfPlane::FromAbove,
        ) {
            Ok(sol) => sol,
            Err(lattice_solver::SolverError::NoConvergence { .. }) => {
                // near the bound-state pole at q = -1 the relative residual
                // floor is set by conditioning of the huge solution, not by
                // truncation; a fixed-depth solve is still fully accurate
                // relative to the pole part
                let depth = 8;
                let w0 = target + (1usize << depth) - 1;
                let c = lattice_solver::family_coeffs(
                    &self.params,
                    Family::Lattice,
                    sigma,
                    w0,
                    HalfPlane::FromAbove,
                )?;
                lattice_solver::solve_doubling(&c, depth, target, sigma)?
            }
            Err(e) => return Err(e.into()),
        };
        Ok(sol.g_at(n).expect("site inside solved window"))
    }

    /// Eq. (13) with s = sqrt(-ip):
    ///   psi_hat(x,p) = e^{-|x|s} psi_hat(0,p) + i e^{-|x|s}/(s(1+s))
    ///                + i (e^{-|x|s} - s e^{-|x|}) / (s(s^2-1)).
    /// The last term's pole at s = 1 (ip = -1) is removable; near it the
    /// combination is evaluated by series to avoid the cancellation.
    pub fn assemble_psi_hat(&self, x: f64, p: Complex64) -> Result<Complex64> {
        self.check_convention()?;
        let xa = x.abs();
        let s = sqrt_lattice(-Complex64::i() * p)?;
        let g0 = self.psi_hat0(p)?;
        let exs = (-xa * s).exp();
        let term2 = Complex64::i() * exs / (s * (1.0 + s));
        let eps = s - 1.0;
        let term3 = if eps.norm() < 1e-3 {
            // (e^{-|x|s} - s e^{-|x|}) / (s-1) = e^{-|x|}((e^{-|x|eps}-1)/eps - 1)
            let d = expm1_over(-xa, eps);
            Complex64::i() * (-xa).exp() * (d - 1.0) / (s * (s + 1.0))
        } else {
            Complex64::i() * (exs - s * (-xa).exp()) / (s * (s * s - 1.0))
        };
        Ok(exs * g0 + term2 + term3)
    }
}

/// (e^{a eps} - 1)/eps, stable for small |eps| (including eps = 0, where the
/// limit is a); series in a*eps when the direct form would cancel.
fn expm1_over(a: f64, eps: Complex64) -> Complex64 {
    let z = a * eps;
    if z.norm() > 0.5 {
        return (z.exp() - 1.0) / eps;
    }
    // (e^z - 1)/eps = a (1 + z/2! + z^2/3! + ...)
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 2..25 {
        term *= z / n as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    a * sum
}
