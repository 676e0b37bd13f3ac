use crate::moments::panel_moments;
use crate::transform::theta_from_phi;
use crate::{OracleError, Result};
use lattice_solver::ModelParams;
use num_complex::Complex64;

const MAX_NODES: usize = 2_000_000;

/// phi(t) on a uniform mesh, with enough stored structure (panel order,
/// cumulative integral) that theta and Theta never re-solve the equation.
#[derive(Debug, Clone)]
pub struct PhiSeries {
    pub params: ModelParams,
    /// uniform nodes t_i = i h, extended two nodes past the requested t_max
    /// so quadratic interpolation stencils exist for every query t <= t_max
    pub mesh: Vec<f64>,
    pub values: Vec<Complex64>,
    /// order of the product-integration rule (quadratic interpolation)
    pub order: usize,
    pub(crate) h: f64,
    pub(crate) t_max: f64,
    /// cumulative int_0^{t_i} phi, Simpson pairs + one-sided quadratic ends
    pub(crate) cum: Vec<Complex64>,
}

impl PhiSeries {
    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub(crate) fn check_range(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) || t > self.t_max * (1.0 + 1e-12) + 1e-12 {
            return Err(OracleError::Range { t, t_max: self.t_max });
        }
        Ok(())
    }
}

fn cumulative(h: f64, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let mut cum = vec![Complex64::default(); n];
    for i in (2..n).step_by(2) {
        cum[i] = cum[i - 2] + (h / 3.0) * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
    }
    for i in (1..n).step_by(2) {
        if i + 1 < n {
            cum[i] = cum[i - 1] + (h / 12.0) * (5.0 * v[i - 1] + 8.0 * v[i] - v[i + 1]);
        } else {
            cum[i] = cum[i - 1] + (h / 2.0) * (v[i - 1] + v[i]);
        }
    }
    cum
}

/// Solve the Volterra equation on a prescribed uniform step h. The singular
/// factor of eta is handled by exact panel moments against quadratic
/// interpolants of phi (product integration, order 3).
pub fn solve_phi_with_step(params: &ModelParams, t_max: f64, h: f64) -> Result<PhiSeries> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(OracleError::Params(format!("t_max = {t_max} must be positive")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(OracleError::Params(format!("step h = {h} must be positive")));
    }
    let panels = (t_max / h).ceil() as usize + 2;
    if panels + 1 > MAX_NODES {
        return Err(OracleError::Params(format!(
            "mesh of {} nodes exceeds the {MAX_NODES}-node cap; this regime \
             belongs to the Laplace route",
            panels + 1
        )));
    }
    let mu = panel_moments(h, panels)?;
    // forward stencil: phi(t_i - u) on panel [jh,(j+1)h] interpolated through
    // phi_{i-j}, phi_{i-j-1}, phi_{i-j-2} (Lagrange in s = (u - jh)/h at
    // s = 0, 1, 2)
    let mut c0 = Vec::with_capacity(panels);
    let mut c1 = Vec::with_capacity(panels);
    let mut c2 = Vec::with_capacity(panels);
    for m in &mu {
        c0.push(m[0] - 1.5 * m[1] + 0.5 * m[2]);
        c1.push(2.0 * m[1] - m[2]);
        c2.push(-0.5 * m[1] + 0.5 * m[2]);
    }
    let n = panels + 1;
    let (alpha, omega) = (params.alpha, params.omega);
    let mut v = vec![Complex64::default(); n];
    for i in 1..n {
        let s_fac = alpha * (omega * i as f64 * h).sin();
        let mut acc = Complex64::default();
        if i >= 2 {
            for j in 0..=i - 2 {
                acc += c0[j] * v[i - j] + c1[j] * v[i - j - 1] + c2[j] * v[i - j - 2];
            }
            // last panel j = i-1 reaches past t = 0; use the backward stencil
            // through phi_2, phi_1, phi_0 (Lagrange nodes s = -1, 0, 1)
            let m = &mu[i - 1];
            let bm1 = 0.5 * (m[2] - m[1]);
            let b0 = m[0] - m[2];
            let b1 = 0.5 * (m[2] + m[1]);
            acc += bm1 * v[2] + b0 * v[1] + b1 * v[0];
            let wself = c0[0];
            v[i] = s_fac * (1.0 + acc) / (1.0 - s_fac * wself);
        } else {
            // single panel: linear between phi_1 (unknown) and phi_0 = 0
            let wself = mu[0][0] - mu[0][1];
            v[i] = s_fac / (1.0 - s_fac * wself);
        }
        if !v[i].is_finite() {
            return Err(OracleError::Params(format!(
                "solution blew up at t = {}",
                i as f64 * h
            )));
        }
    }
    let mesh = (0..n).map(|i| i as f64 * h).collect();
    let cum = cumulative(h, &v);
    Ok(PhiSeries { params: params.clone(), mesh, values: v, order: 3, h, t_max, cum })
}

/// Solve phi on [0, t_max] to global error <= tol. The step is chosen from
/// the rule's measured h^3 error constant, then verified against a
/// twice-coarser solve (Richardson estimate at theta(t_max)); refinement
/// continues until the estimate passes or the history shows stagnation.
pub fn solve_phi(params: &ModelParams, t_max: f64, tol: f64) -> Result<PhiSeries> {
    if !(tol >= 1e-10) {
        return Err(OracleError::Params(format!("tol = {tol} below the 1e-10 floor")));
    }
    if !(t_max > 0.0) || t_max > 200.0 * params.period() {
        return Err(OracleError::Params(format!(
            "t_max = {t_max} outside (0, 200 T]; long times belong to the Laplace route"
        )));
    }
    // error ~ 0.625 h^3 per ~30 time units, so budget for the run length
    let budget = tol / (2.5 * (t_max / 30.0).max(1.0));
    let mut h = budget.cbrt().min(0.02).min(params.period() / 40.0);
    let mut prev = solve_phi_with_step(params, t_max, 2.0 * h)?;
    let mut history = Vec::new();
    for _ in 0..4 {
        let cur = solve_phi_with_step(params, t_max, h)?;
        let est = (theta_from_phi(&cur, t_max)? - theta_from_phi(&prev, t_max)?).norm() / 7.0;
        history.push((h, est));
        if est <= tol {
            return Ok(cur);
        }
        prev = cur;
        h /= 2.0;
    }
    Err(OracleError::NoConvergence { history })
}
