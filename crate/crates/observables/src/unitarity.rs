use crate::{ObsError, Result};
use lattice_solver::ModelParams;
use volterra_oracle::{solve_phi, theta_big_from_phi, theta_from_phi, PhiSeries};

fn adaptive_simpson(
    f: &mut impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let h = b - a;
    let whole = h / 6.0 * (fa + 4.0 * fm + fb);
    let left = h / 12.0 * (fa + 4.0 * flm + fm);
    let right = h / 12.0 * (fm + 4.0 * frm + fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() < 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    Ok(adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1)?
        + adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1)?)
}

/// |theta(t)|^2 + int_R |Theta(k,t)|^2 dk - 1, from a pre-solved series.
/// The k-integral is adaptive Simpson on [0, k_cut] (doubled by evenness)
/// with explicit subdivision at every open-channel momentum sqrt(n omega - 1),
/// where the integrand has its sharp features; k_cut is extended until the
/// envelope tail bound drops below 1e-8.
pub fn unitarity_defect_with(phi: &PhiSeries, t: f64) -> Result<f64> {
    let p = phi.params;
    let th2 = theta_from_phi(phi, t)?.norm_sqr();
    if p.alpha == 0.0 || t == 0.0 {
        return Ok((th2 - 1.0).abs());
    }
    let phimax = phi.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // |Theta(k,t)| ~ pref |phi(t)| / (1 + k^2) at large k (integration by
    // parts of the transform), so the tail mass is ~ 4 phimax^2/(3 pi k^3)
    let mut k_cut = (20.0 * (p.m() as f64 * p.omega).max(1.0)).sqrt();
    while 4.0 * phimax * phimax / (3.0 * std::f64::consts::PI * k_cut.powi(3)) > 1e-8 {
        if k_cut > 400.0 {
            return Err(ObsError::Params(
                "unitarity tail bound not attainable before k_cut = 400".into(),
            ));
        }
        k_cut *= 1.5;
    }
    let mut breaks = vec![0.0];
    let mut n = 1;
    while (n as f64) * p.omega - 1.0 < k_cut * k_cut {
        let u = n as f64 * p.omega - 1.0;
        if u > 0.0 {
            breaks.push(u.sqrt());
        }
        n += 1;
    }
    breaks.push(k_cut);
    let mut f = |k: f64| -> Result<f64> { Ok(theta_big_from_phi(phi, k, t)?.norm_sqr()) };
    let mut integral = 0.0;
    let seg_tol = 1e-9 / breaks.len() as f64;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let fa = f(a)?;
        let fm = f(0.5 * (a + b))?;
        let fb = f(b)?;
        integral += adaptive_simpson(&mut f, a, b, fa, fm, fb, seg_tol, 32)?;
    }
    Ok((th2 + 2.0 * integral - 1.0).abs())
}

/// Convenience wrapper that solves the oracle for (params, t) first.
pub fn unitarity_defect(params: &ModelParams, t: f64) -> Result<f64> {
    if params.alpha == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    if t > 50.0 * params.period() {
        return Err(ObsError::Regime(format!(
            "unitarity check uses the oracle route; t = {t} exceeds 50 T"
        )));
    }
    let tol = if t <= 60.0 { 1e-8 } else { 1e-7 };
    let phi = solve_phi(params, t, tol)?;
    unitarity_defect_with(&phi, t)
}
