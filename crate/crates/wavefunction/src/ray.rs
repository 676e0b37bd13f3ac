use crate::{LaplaceField, Result, WaveError};
use num_complex::Complex64;

const T_ASYM: f64 = 100.0;

/// Eq. (15): along the ray x = vt,
///   psi(vt, t) ~ e^{i x^2/4t} (1/(2 sqrt(i pi))) (|v|/sqrt(t))
///                [psi_hat(0, -i v^2/4) - i/(1 + v^2/4)].
/// The boundary data sits at real q = v^2/4, evaluated as the limit from
/// the right p half plane.
pub fn asymptotic_ray(field: &LaplaceField, v: f64, t: f64) -> Result<Complex64> {
    if v == 0.0 || !v.is_finite() {
        return Err(WaveError::Params(format!("ray velocity v = {v} must be finite and nonzero")));
    }
    if !(t >= T_ASYM) {
        return Err(WaveError::Regime(format!(
            "stationary-phase formula needs t >= {T_ASYM}; got t = {t}"
        )));
    }
    let p = -Complex64::i() * (v * v / 4.0);
    let g0 = field.psi_hat0(p)?;
    let x = v * t;
    let phase = Complex64::new(0.0, x * x / (4.0 * t)).exp();
    let pref = Complex64::new(0.0, -std::f64::consts::FRAC_PI_4).exp()
        / (2.0 * std::f64::consts::PI.sqrt());
    Ok(phase * pref * (v.abs() / t.sqrt()) * (g0 - Complex64::i() / (1.0 + v * v / 4.0)))
}
