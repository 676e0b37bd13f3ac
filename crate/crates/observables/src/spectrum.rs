use crate::{ObsError, Result};
use kernel_math::HalfPlane;
use lattice_solver::{evaluate_phi, ModelParams};
use num_complex::Complex64;
use rayon::prelude::*;
use volterra_oracle::{solve_phi, theta_big_from_phi};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TimeDomain,
    LaplaceBoundary,
    SmallAlphaClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Finite(f64),
    Infinite,
}

/// One spectrum Theta(k, t) sampled on a k-grid.
#[derive(Debug, Clone)]
pub struct SpectrumSlice {
    pub params: ModelParams,
    pub t: TimeSpec,
    pub k_grid: Vec<f64>,
    pub amplitude: Vec<Complex64>,
    pub method: Method,
}

/// sqrt(2/pi) |k| / (1 - i|k|), the Eq. (5) prefactor; even in k.
pub fn theta_big_prefactor(k: f64) -> Complex64 {
    let ka = k.abs();
    (2.0 / std::f64::consts::PI).sqrt() * ka / Complex64::new(1.0, -ka)
}

fn check_grid(k_grid: &[f64]) -> Result<()> {
    if k_grid.iter().any(|k| !k.is_finite()) {
        return Err(ObsError::Params("k_grid contains non-finite entries".into()));
    }
    Ok(())
}

/// Theta(k, infinity) = pref(k) * Phi(1 + k^2), boundary values from the
/// upper half plane. Near-pole failures cannot occur at real q; if the
/// solver reports one it is propagated as the bug signal it is.
pub fn spectrum_infinite_time(params: &ModelParams, k_grid: &[f64]) -> Result<SpectrumSlice> {
    check_grid(k_grid)?;
    let amplitude = k_grid
        .par_iter()
        .map(|&k| {
            if k == 0.0 {
                return Ok(Complex64::default());
            }
            let q = Complex64::new(1.0 + k * k, 0.0);
            Ok(theta_big_prefactor(k) * evaluate_phi(params, q, HalfPlane::FromAbove)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumSlice {
        params: *params,
        t: TimeSpec::Infinite,
        k_grid: k_grid.to_vec(),
        amplitude,
        method: Method::LaplaceBoundary,
    })
}

/// Finite-time spectrum by the Laplace route:
///   Theta(k,t) = Theta(k,inf) - pref(k) int_t^inf phi(s) e^{i(1+k^2)s} ds,
/// with the tail integral evaluated from the residue series plus the Hankel
/// branch-cut series (see LargeTimeTheta::transform_tail). Valid for t well
/// past the oracle window; degrades only at the branch-point momenta
/// k^2 = n omega.
pub fn spectrum_finite_laplace(
    params: &ModelParams,
    k_grid: &[f64],
    t: f64,
) -> Result<SpectrumSlice> {
    check_grid(k_grid)?;
    let infinite = spectrum_infinite_time(params, k_grid)?;
    let asym = crate::LargeTimeTheta::new(params)?;
    let table = asym.cut_table(t)?;
    let amplitude = k_grid
        .par_iter()
        .zip(&infinite.amplitude)
        .map(|(&k, &inf)| {
            if k == 0.0 {
                return Complex64::default();
            }
            inf - theta_big_prefactor(k) * asym.transform_tail(&table, 1.0 + k * k)
        })
        .collect();
    Ok(SpectrumSlice {
        params: *params,
        t: TimeSpec::Finite(t),
        k_grid: k_grid.to_vec(),
        amplitude,
        method: Method::LaplaceBoundary,
    })
}

/// Finite-time spectrum, routed: time-domain oracle for t <= 50 T, Laplace
/// residue route beyond.
pub fn spectrum_finite_time(params: &ModelParams, k_grid: &[f64], t: f64) -> Result<SpectrumSlice> {
    check_grid(k_grid)?;
    if !(t >= 0.0) {
        return Err(ObsError::Params(format!("t = {t} must be >= 0")));
    }
    if t > 50.0 * params.period() {
        return spectrum_finite_laplace(params, k_grid, t);
    }
    if t == 0.0 || params.alpha == 0.0 {
        return Ok(SpectrumSlice {
            params: *params,
            t: TimeSpec::Finite(t),
            k_grid: k_grid.to_vec(),
            amplitude: vec![Complex64::default(); k_grid.len()],
            method: Method::TimeDomain,
        });
    }
    let tol = if t <= 60.0 { 1e-8 } else { 1e-7 };
    let phi = solve_phi(params, t, tol)?;
    let amplitude = k_grid
        .par_iter()
        .map(|&k| Ok(theta_big_from_phi(&phi, k, t)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumSlice {
        params: *params,
        t: TimeSpec::Finite(t),
        k_grid: k_grid.to_vec(),
        amplitude,
        method: Method::TimeDomain,
    })
}

/// Eq. (8) evaluated literally (without its (1 + o(alpha; t)) factor);
/// stated for omega > 1 only.
pub fn small_alpha_closed_form(params: &ModelParams, k: f64, t: TimeSpec) -> Result<Complex64> {
    let (alpha, omega) = (params.alpha, params.omega);
    if omega <= 1.0 {
        return Err(ObsError::Regime(format!(
            "Eq. (8) holds for omega > 1; got omega = {omega}"
        )));
    }
    let pref = (2.0 / std::f64::consts::PI).sqrt() * alpha * omega * k / Complex64::new(1.0, -k);
    let sm = (omega - 1.0).sqrt();
    let sp = (omega + 1.0).sqrt();
    let num = match t {
        TimeSpec::Infinite => Complex64::new(1.0, 0.0),
        TimeSpec::Finite(t) => {
            let damp = (-alpha * alpha * t * sm / (2.0 * omega)).exp();
            let phase = Complex64::new(
                0.0,
                t * (alpha * alpha * sp / (2.0 * omega) + k * k - omega + 1.0),
            )
            .exp();
            1.0 - damp * phase
        }
    };
    let den = alpha * alpha * Complex64::new(sm, -sp)
        - Complex64::new(0.0, 2.0 * omega * (k * k - omega + 1.0));
    Ok(pref * num / den)
}
