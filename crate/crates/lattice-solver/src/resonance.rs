use crate::{
    evaluate_phi_raw, reduce_q, solve_functional_equation, Family, ModelParams, Result,
    SolverError,
};
use kernel_math::HalfPlane;
use num_complex::Complex64;

/// A simple pole of Phi in the lower half q-plane: the resonance driving the
/// exponential decay |theta(t)|^2 ~ e^{-gamma t}.
#[derive(Debug, Clone)]
pub struct Resonance {
    pub q_pole: Complex64,
    pub residue: Complex64,
    /// decay rate of |theta|^2: gamma = 2 |Im q_pole|
    pub gamma: f64,
}

/// Default search start: the m-photon threshold q = m*omega, pushed slightly
/// into the lower half plane on the Fermi-golden-rule scale.
pub fn default_pole_guess(params: &ModelParams) -> Complex64 {
    let m = params.m();
    let re = m as f64 * params.omega;
    let fgr = params.alpha.powi(2 * m as i32) * (re - 1.0).max(0.1).sqrt() / params.omega;
    Complex64::new(re, -(0.3 * fgr).max(1e-9))
}

fn inv_phi(params: &ModelParams, q: Complex64) -> Result<Complex64> {
    Ok(1.0 / evaluate_phi_raw(params, q, HalfPlane::FromAbove)?)
}

/// Secant refinement of the simple zero of 1/Phi starting from q_guess.
pub fn find_resonance(params: &ModelParams, q_guess: Complex64) -> Result<Resonance> {
    if params.cusp_regime() {
        return Err(SolverError::CuspRegime);
    }
    let mut q0 = q_guess;
    let mut q1 = q_guess + Complex64::new(1e-4, 0.0);
    let mut f0 = inv_phi(params, q0)?;
    let mut f1 = inv_phi(params, q1)?;
    for _ in 0..100 {
        let step = f1 * (q1 - q0) / (f1 - f0);
        let q2 = q1 - step;
        if (q2 - q_guess).norm() > 1.5 * params.omega {
            return Err(SolverError::SearchEscaped(q2));
        }
        if (q2 - q1).norm() <= 1e-14 * q2.norm() {
            return finish(params, q2);
        }
        q0 = q1;
        f0 = f1;
        q1 = q2;
        f1 = inv_phi(params, q1)?;
    }
    finish(params, q1)
}

fn finish(params: &ModelParams, q_pole: Complex64) -> Result<Resonance> {
    // residue of the simple pole by a symmetric difference:
    // Phi(q_p +- d) ~ +-R/d, so R = d (Phi(q_p+d) - Phi(q_p-d)) / 2
    let d = 1e-5;
    let p = evaluate_phi_raw(params, q_pole + d, HalfPlane::FromAbove)?;
    let m = evaluate_phi_raw(params, q_pole - d, HalfPlane::FromAbove)?;
    let residue = d * (p - m) / 2.0;
    if !residue.is_finite() || residue.norm() == 0.0 {
        return Err(SolverError::Params("degenerate residue at located pole".into()));
    }
    Ok(Resonance { q_pole, residue, gamma: 2.0 * q_pole.im.abs() })
}

/// Residues R_n of the full omega-spaced pole array q_pole + n*omega,
/// n = -nmax..=nmax, from one lattice solve on each side of the pole.
pub fn residue_array(
    params: &ModelParams,
    res: &Resonance,
    nmax: usize,
) -> Result<Vec<(Complex64, Complex64)>> {
    let d = 1e-5;
    let (sigma, n0) = reduce_q(params, res.q_pole);
    let target = nmax + n0.unsigned_abs() as usize + 2;
    let sp = solve_functional_equation(
        params,
        Family::Functional,
        sigma + d,
        target,
        HalfPlane::FromAbove,
    )?;
    let sm = solve_functional_equation(
        params,
        Family::Functional,
        sigma - d,
        target,
        HalfPlane::FromAbove,
    )?;
    let mut out = Vec::with_capacity(2 * nmax + 1);
    for k in -(nmax as i64)..=nmax as i64 {
        let site = n0 + k;
        let r = d * (sp.g_at(site).unwrap() - sm.g_at(site).unwrap()) / 2.0;
        out.push((res.q_pole + k as f64 * params.omega, r));
    }
    Ok(out)
}
