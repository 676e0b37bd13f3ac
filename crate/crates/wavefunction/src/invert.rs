use crate::{LaplaceField, PsiMethod, Result, WaveError, WavefieldSlice};
use kernel_math::{sqrt_lattice, HalfPlane};
use lattice_solver::{solve_functional_equation, Family};
use num_complex::Complex64;
use rayon::prelude::*;

const NMAX: usize = 80;
const T_CAP: f64 = 1e3;

/// One quadrature node q on the contour Im q = c: pre-folded weight
/// h(q) e^{-iqt} dq / 2pi and the root s = sqrt(-ip) for the x-dependence.
struct Node {
    w: Complex64,
    s: Complex64,
}

/// Contour nodes for psi(x,t) = e^{it}e^{-|x|} + (1/2pi) int e^{-iqt}
/// e^{-|x| s(q)} h(q) dq over the line Im q = c, h(q) = psi_hat(0,-iq)
/// - i/(q+1) (the subtraction removes the bound-state part handled exactly).
/// Midpoint rule with m columns per omega-cell, lattice window -NMAX..=NMAX.
fn build_nodes(field: &LaplaceField, t: f64, m: usize, c: f64) -> Result<Vec<Node>> {
    let p = field.params;
    let cols: Vec<Vec<Node>> = (0..m)
        .into_par_iter()
        .map(|j| -> Result<Vec<Node>> {
            let sigma = Complex64::new((j as f64 + 0.5) * p.omega / m as f64, c);
            let sol =
                solve_functional_equation(&p, Family::Lattice, sigma, NMAX, HalfPlane::FromAbove)?;
            let dq = p.omega / m as f64 / (2.0 * std::f64::consts::PI);
            let mut col = Vec::with_capacity(2 * NMAX + 1);
            for n in -(NMAX as i64)..=NMAX as i64 {
                let q = sigma + n as f64 * p.omega;
                let h = sol.g_at(n).expect("window covers nmax") - Complex64::i() / (q + 1.0);
                col.push(Node {
                    w: h * (-Complex64::i() * q * t).exp() * dq,
                    s: sqrt_lattice(-q)?,
                });
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    Ok(cols.into_iter().flatten().collect())
}

fn eval(nodes: &[Node], t: f64, x: f64) -> Complex64 {
    let xa = x.abs();
    let mut sum = Complex64::default();
    for node in nodes {
        sum += node.w * (-xa * node.s).exp();
    }
    Complex64::new(0.0, t).exp() * (-xa).exp() + sum
}

/// Numerical inversion of the time Laplace transform for moderate t. The
/// Bromwich line is the horizontal contour Im q = c hugging the real-axis
/// singular set (branch points at n omega + 1); c shrinks as 4/t so the
/// e^{ct} amplification stays bounded. Convergence is verified against a
/// half-resolution contour at probe points before the full grid is evaluated.
pub fn invert_moderate(field: &LaplaceField, t: f64, x_grid: &[f64]) -> Result<WavefieldSlice> {
    if !(t >= 0.0) || t > T_CAP {
        return Err(WaveError::Params(format!("t = {t} outside [0, {T_CAP}]")));
    }
    if x_grid.iter().any(|x| !x.is_finite()) {
        return Err(WaveError::Params("x_grid contains non-finite entries".into()));
    }
    let p = field.params;
    if t == 0.0 {
        return Ok(WavefieldSlice {
            t,
            x_grid: x_grid.to_vec(),
            psi: x_grid.iter().map(|x| Complex64::new((-x.abs()).exp(), 0.0)).collect(),
            method: PsiMethod::ContourInversion,
        });
    }
    let c = (4.0 / t).min(0.05);
    let m = 1200usize.max((15.0 * p.omega * t).ceil() as usize);
    let nodes = build_nodes(field, t, m, c)?;
    let coarse = build_nodes(field, t, m / 2, c)?;
    let tol = 3e-6;
    let stride = (x_grid.len() / 9).max(1);
    let worst = x_grid
        .iter()
        .step_by(stride)
        .map(|&x| (eval(&nodes, t, x) - eval(&coarse, t, x)).norm())
        .fold(0.0, f64::max);
    if worst > tol {
        return Err(WaveError::Quadrature { m, nmax: NMAX, c, worst, tol });
    }
    let psi = x_grid.par_iter().map(|&x| eval(&nodes, t, x)).collect();
    Ok(WavefieldSlice { t, x_grid: x_grid.to_vec(), psi, method: PsiMethod::ContourInversion })
}
