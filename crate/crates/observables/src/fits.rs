use crate::{ObsError, Result, SurvivalCurve};

fn lsq_slope(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

fn window_points(
    curve: &SurvivalCurve,
    window: (f64, f64),
    map: impl Fn(f64, f64) -> Option<(f64, f64)>,
) -> Result<Vec<(f64, f64)>> {
    let pts: Vec<_> = curve
        .t_grid
        .iter()
        .zip(&curve.theta)
        .filter(|(t, _)| **t >= window.0 && **t <= window.1)
        .filter_map(|(t, th)| map(*t, th.norm_sqr()))
        .collect();
    if pts.len() < 5 {
        return Err(ObsError::Window(format!(
            "only {} usable samples in [{}, {}]",
            pts.len(),
            window.0,
            window.1
        )));
    }
    Ok(pts)
}

/// Least-squares slope of -log|theta|^2 over the window: the exponential
/// decay rate gamma. Refused in the cusp regime, where the decay is
/// power-law and an exponential fit silently measures the window, not the
/// physics.
pub fn fit_decay_rate(curve: &SurvivalCurve, window: (f64, f64)) -> Result<f64> {
    if curve.params.cusp_regime() {
        return Err(ObsError::Regime(format!(
            "1/omega = {:.6} is within 1e-3 of an integer: stabilized, \
             power-law decay; an exponential rate is not defined",
            1.0 / curve.params.omega
        )));
    }
    let pts = window_points(curve, window, |t, p2| {
        (p2 > 0.0).then(|| (t, -p2.ln()))
    })?;
    Ok(lsq_slope(&pts).0)
}

/// log-log fit of the |theta|^2 tail: returns (exponent, amplitude at t=1).
/// The dense grid averages the cut-interference oscillations.
pub fn tail_power_fit(curve: &SurvivalCurve, window: (f64, f64)) -> Result<(f64, f64)> {
    if window.1 < 10.0 * window.0 {
        return Err(ObsError::Window(format!(
            "tail window [{}, {}] spans less than one decade",
            window.0, window.1
        )));
    }
    let pts = window_points(curve, window, |t, p2| {
        (p2 > 0.0 && t > 0.0).then(|| (t.ln(), p2.ln()))
    })?;
    let (slope, intercept) = lsq_slope(&pts);
    Ok((slope, intercept.exp()))
}

/// Exponent of the |theta(t)|^2 tail (expected -3).
pub fn fit_tail_exponent(curve: &SurvivalCurve, window: (f64, f64)) -> Result<f64> {
    Ok(tail_power_fit(curve, window)?.0)
}
