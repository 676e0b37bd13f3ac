use crate::cuts::LargeTimeTheta;
use crate::{ObsError, Result};
use kernel_math::HalfPlane;
use lattice_solver::{solve_functional_equation, Family, ModelParams};
use num_complex::Complex64;
use volterra_oracle::{solve_phi, theta_from_phi};

/// theta(t) on a time grid, with the routing stitched and checked.
#[derive(Debug, Clone)]
pub struct SurvivalCurve {
    pub params: ModelParams,
    pub t_grid: Vec<f64>,
    pub theta: Vec<Complex64>,
    pub fitted_rate: Option<f64>,
    pub fitted_tail_exponent: Option<f64>,
}

/// theta(t) = 1 - (1/pi) int_{Im q = c} e^{-iqt} Phi(q)/q dq by direct
/// quadrature on a damped horizontal contour: sigma-columns of the
/// functional lattice give Phi at sigma + n*omega for all n in one solve.
pub fn theta_laplace_line(params: &ModelParams, ts: &[f64], c: f64) -> Result<Vec<Complex64>> {
    let (ncols, nmax) = (400usize, 800usize);
    let mut qs = Vec::with_capacity(ncols * (2 * nmax + 1));
    let mut phis = Vec::with_capacity(qs.capacity());
    for jcol in 0..ncols {
        let sigma = Complex64::new((jcol as f64 + 0.5) * params.omega / ncols as f64, c);
        let sol =
            solve_functional_equation(params, Family::Functional, sigma, nmax, HalfPlane::FromAbove)?;
        for n in -(nmax as i64)..=nmax as i64 {
            qs.push(sigma + n as f64 * params.omega);
            phis.push(sol.g_at(n).expect("site in window"));
        }
    }
    let hq = params.omega / ncols as f64;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let mut s = Complex64::default();
        for (q, f) in qs.iter().zip(&phis) {
            s += (-Complex64::i() * q * t).exp() * f / q;
        }
        out.push(1.0 - s * hq / std::f64::consts::PI);
    }
    Ok(out)
}

/// theta on a sorted grid: Volterra oracle for t <= 50 T, residue + Hankel
/// cut asymptotics beyond, with the two routes cross-checked at the stitch
/// point to 1e-6.
pub fn survival_curve(params: &ModelParams, t_grid: &[f64]) -> Result<SurvivalCurve> {
    if t_grid.windows(2).any(|w| w[1] < w[0]) || t_grid.iter().any(|t| !(*t >= 0.0)) {
        return Err(ObsError::Params("t_grid must be sorted and non-negative".into()));
    }
    let period = params.period();
    let t_hi = 50.0 * period;
    let need_asym = t_grid.iter().any(|&t| t > t_hi);
    let largest_oracle_t = t_grid.iter().copied().filter(|&t| t > 0.0 && t <= t_hi).fold(0.0, f64::max);

    if params.alpha == 0.0 {
        return Ok(SurvivalCurve {
            params: *params,
            t_grid: t_grid.to_vec(),
            theta: vec![Complex64::new(1.0, 0.0); t_grid.len()],
            fitted_rate: None,
            fitted_tail_exponent: None,
        });
    }

    // when the asymptotic route is used, always carry the oracle far enough
    // into the overlap window [20 T, 50 T] for the stitch check
    let t_oracle_max = if need_asym {
        largest_oracle_t.max(35.0 * period)
    } else {
        largest_oracle_t
    };
    let phi = if t_oracle_max > 0.0 {
        let tol = if t_oracle_max <= 60.0 { 1e-8 } else { 1e-7 };
        Some(solve_phi(params, t_oracle_max, tol)?)
    } else {
        None
    };
    let asym = if need_asym { Some(LargeTimeTheta::new(params)?) } else { None };

    if let (Some(phi), Some(asym)) = (&phi, &asym) {
        let t_check = t_oracle_max;
        let mismatch = (theta_from_phi(phi, t_check)? - asym.eval(t_check)?).norm();
        if mismatch > 1e-6 {
            return Err(ObsError::Inconsistent { t: t_check, mismatch, tol: 1e-6 });
        }
    }

    let mut theta = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let v = if t == 0.0 {
            Complex64::new(1.0, 0.0)
        } else if t <= t_oracle_max {
            theta_from_phi(phi.as_ref().expect("oracle solved"), t)?
        } else {
            asym.as_ref().expect("asymptotic route prepared").eval(t)?
        };
        theta.push(v);
    }
    for (t, th) in t_grid.iter().zip(&theta) {
        if th.norm() > 1.0 + 1e-8 {
            return Err(ObsError::Params(format!("|theta({t})| = {} > 1", th.norm())));
        }
    }
    Ok(SurvivalCurve {
        params: *params,
        t_grid: t_grid.to_vec(),
        theta,
        fitted_rate: None,
        fitted_tail_exponent: None,
    })
}
