use crate::{find_resonance, solve_functional_equation, Family, ModelParams, Result, SolverError};
use kernel_math::HalfPlane;
use num_complex::Complex64;

/// Split q = sigma + n*omega with Re sigma in [0, omega).
pub fn reduce_q(params: &ModelParams, q: Complex64) -> (Complex64, i64) {
    let n = (q.re / params.omega).floor() as i64;
    (q - n as f64 * params.omega, n)
}

/// Phi(q) from the family-Functional lattice solution at sigma = q mod omega,
/// without the near-pole guard.
pub fn evaluate_phi_raw(
    params: &ModelParams,
    q: Complex64,
    approach: HalfPlane,
) -> Result<Complex64> {
    let (sigma, n) = reduce_q(params, q);
    let target = (n.unsigned_abs() as usize + 4).max(8);
    let sol = match solve_functional_equation(params, Family::Functional, sigma, target, approach)
    {
        Ok(sol) => sol,
        Err(SolverError::NoConvergence { .. }) => {
            // close to a pole the relative residual is limited by the
            // conditioning of Phi itself (~eps/dist); a fixed-depth solve
            // still carries full information about the pole location
            let depth = 8;
            let w0 = target + (1usize << depth) - 1;
            let c = crate::family_coeffs(params, Family::Functional, sigma, w0, approach)?;
            crate::solve_doubling(&c, depth, target, sigma)?
        }
        Err(e) => return Err(e),
    };
    Ok(sol.g_at(n).expect("site inside solved window"))
}

/// Phi(q); boundary values on the real axis are taken from the half plane
/// selected by `approach`. Evaluation too close to a resonance pole is
/// rejected with the located Resonance attached.
pub fn evaluate_phi(
    params: &ModelParams,
    q: Complex64,
    approach: HalfPlane,
) -> Result<Complex64> {
    let phi = evaluate_phi_raw(params, q, approach)?;
    if phi.norm() > 1e9 * params.alpha.max(1e-3) {
        if let Ok(res) = find_resonance(params, q) {
            let dist = (q - res.q_pole).norm();
            if dist < 1e-6 {
                return Err(SolverError::NearPole { q, dist, resonance: Box::new(res) });
            }
        }
    }
    Ok(phi)
}
