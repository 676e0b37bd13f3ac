//! Downstream integrals of the stored phi series: theta(t) and the
//! oscillatory partial transform int_0^t phi(s) e^{i beta s} ds that yields
//! Theta(k,t). The phase is folded in analytically per panel (Filon with
//! quadratic amplitude interpolation), so accuracy is phase-independent.

use crate::{OracleError, PhiSeries, Result};
use num_complex::Complex64;

/// int_0^S s^l e^{i b s} ds for l = 0, 1, 2; series branch when the phase
/// across the interval is small (the closed form loses digits to 1/b powers).
fn phase_moments(b: f64, s_len: f64) -> [Complex64; 3] {
    let z = Complex64::new(0.0, b);
    if (b * s_len).abs() < 0.05 {
        let mut g = [Complex64::default(); 3];
        let mut zn = Complex64::new(1.0, 0.0); // z^n S^n / n!
        for n in 0..30 {
            for (l, gl) in g.iter_mut().enumerate() {
                *gl += zn * s_len.powi(l as i32 + 1) / (n + l + 1) as f64;
            }
            zn *= z * s_len / (n + 1) as f64;
            if zn.norm() < 1e-20 {
                break;
            }
        }
        g
    } else {
        let es = (z * s_len).exp();
        let g0 = (es - 1.0) / z;
        let g1 = (s_len * es - g0) / z;
        let g2 = (s_len * s_len * es - 2.0 * g1) / z;
        [g0, g1, g2]
    }
}

/// Weights of the quadratic Lagrange interpolant through nodes s = 0, 1, 2
/// against the moments g_l = int s^l e^{ibs} ds.
fn lagrange_weights(g: [Complex64; 3]) -> [Complex64; 3] {
    [
        0.5 * g[2] - 1.5 * g[1] + g[0],
        2.0 * g[1] - g[2],
        0.5 * (g[2] - g[1]),
    ]
}

/// I(beta, t) = int_0^t phi(s) e^{i beta s} ds from the stored series.
pub fn partial_transform(phi: &PhiSeries, beta: f64, t: f64) -> Result<Complex64> {
    phi.check_range(t)?;
    if !beta.is_finite() {
        return Err(OracleError::Params(format!("beta = {beta} must be finite")));
    }
    let h = phi.h;
    let v = &phi.values;
    let b = beta * h;
    let i_end = ((t / h).floor() as usize).min(v.len() - 3);
    let pairs = i_end / 2;
    let w_full = lagrange_weights(phase_moments(b, 2.0));
    let rot = Complex64::from_polar(1.0, 2.0 * b);
    let mut ph = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::default();
    for j in 0..pairs {
        if j % 4096 == 0 {
            // refresh the phase recurrence to stop roundoff drift
            ph = Complex64::from_polar(1.0, beta * (2 * j) as f64 * h);
        }
        let i = 2 * j;
        acc += ph * (w_full[0] * v[i] + w_full[1] * v[i + 1] + w_full[2] * v[i + 2]);
        ph *= rot;
    }
    let e = 2 * pairs;
    let s_rem = (t - e as f64 * h) / h;
    if s_rem > 0.0 {
        let wr = lagrange_weights(phase_moments(b, s_rem));
        let ph_e = Complex64::from_polar(1.0, beta * e as f64 * h);
        acc += ph_e * (wr[0] * v[e] + wr[1] * v[e + 1] + wr[2] * v[e + 2]);
    }
    Ok(h * acc)
}

/// theta(t) = 1 + 2i int_0^t phi, from the precomputed cumulative integral
/// plus an exact quadratic-segment remainder.
pub fn theta_from_phi(phi: &PhiSeries, t: f64) -> Result<Complex64> {
    phi.check_range(t)?;
    let h = phi.h;
    let v = &phi.values;
    let i = ((t / h).floor() as usize).min(v.len() - 3);
    let s = (t - i as f64 * h) / h;
    let g = [s, 0.5 * s * s, s * s * s / 3.0];
    let w0 = 0.5 * g[2] - 1.5 * g[1] + g[0];
    let w1 = 2.0 * g[1] - g[2];
    let w2 = 0.5 * (g[2] - g[1]);
    let rem = h * (w0 * v[i] + w1 * v[i + 1] + w2 * v[i + 2]);
    let integral = phi.cum[i] + rem;
    Ok(1.0 + 2.0 * Complex64::i() * integral)
}

/// Theta(k, t) = sqrt(2/pi) |k| / (1 - i|k|) * I(1 + k^2, t).
pub fn theta_big_from_phi(phi: &PhiSeries, k: f64, t: f64) -> Result<Complex64> {
    if !k.is_finite() {
        return Err(OracleError::Params(format!("k = {k} must be finite")));
    }
    let ka = k.abs();
    if ka == 0.0 {
        phi.check_range(t)?;
        return Ok(Complex64::default());
    }
    let pref = (2.0 / std::f64::consts::PI).sqrt() * ka / Complex64::new(1.0, -ka);
    Ok(pref * partial_transform(phi, 1.0 + k * k, t)?)
}
