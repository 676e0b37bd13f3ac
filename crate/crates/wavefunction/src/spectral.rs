use crate::{PsiMethod, Result, WaveError, WavefieldSlice};
use kernel_math::erf_complex;
use lattice_solver::ModelParams;
use num_complex::Complex64;
use rayon::prelude::*;
use volterra_oracle::{solve_phi, theta_big_from_phi, theta_from_phi};

const K_CUT: f64 = 25.0;
const DK: f64 = 0.004;
const T_CAP: f64 = 1e3;

/// int_0^K A(k) e^{-it(k-xi)^2} dk with A quadratic per panel through
/// (edge, mid, edge) samples. The quadratic-phase moments are expressed
/// through erf (w = sqrt(t) e^{i pi/4}, w^2 = it), so panels never need to
/// resolve the phase turns and the cost is O(1) per panel in t and x.
fn quad_phase(
    a_edge: &[Complex64],
    a_mid: &[Complex64],
    dk: f64,
    t: f64,
    xi: f64,
) -> Result<Complex64> {
    let w = Complex64::new(0.0, std::f64::consts::FRAC_PI_4).exp() * t.sqrt();
    let w2x2 = 2.0 * Complex64::new(0.0, t); // 2 w^2
    let spw = std::f64::consts::PI.sqrt() / (2.0 * w);
    let mut total = Complex64::default();
    let mut u0 = -xi;
    let mut erf0 = erf_complex(w * u0)?;
    let mut e0 = Complex64::new(0.0, -t * u0 * u0).exp();
    for j in 0..a_mid.len() {
        let u1 = (j + 1) as f64 * dk - xi;
        let erf1 = erf_complex(w * u1)?;
        let e1 = Complex64::new(0.0, -t * u1 * u1).exp();
        let m0 = spw * (erf1 - erf0);
        let m1 = -(e1 - e0) / w2x2;
        let m2 = -(u1 * e1 - u0 * e0) / w2x2 + m0 / w2x2;
        let (a0, am, a1) = (a_edge[j], a_mid[j], a_edge[j + 1]);
        // quadratic through the three samples, in powers of u about 0
        let p1 = -3.0 * a0 + 4.0 * am - a1;
        let p2 = 2.0 * a0 - 4.0 * am + 2.0 * a1;
        let c2 = p2 / (dk * dk);
        let c1 = p1 / dk - 2.0 * c2 * u0;
        let c0 = a0 - (p1 / dk) * u0 + c2 * u0 * u0;
        total += c0 * m0 + c1 * m1 + c2 * m2;
        u0 = u1;
        erf0 = erf1;
        e0 = e1;
    }
    Ok(total)
}

/// psi(x,t) from the spectral decomposition (Eq. 1):
///   psi = theta(t) e^{it} u_b + int_0^inf Theta(k,t) e^{-ik^2 t}
///         (2 cos kx - 2 e^{ik|x|}/(1+ik)) dk / sqrt(2 pi),
/// folding +-k by evenness. The oscillatory k-integrals carry the quadratic
/// phase e^{-it(k -+ xi)^2} with xi = |x|/2t extracted exactly; the k cutoff
/// widens with xi so the stationary point always sits well inside.
pub fn spectral_reconstruct(
    params: &ModelParams,
    t: f64,
    x_grid: &[f64],
) -> Result<WavefieldSlice> {
    if !(t >= 0.0) || t > T_CAP {
        return Err(WaveError::Params(format!("t = {t} outside [0, {T_CAP}]")));
    }
    if x_grid.iter().any(|x| !x.is_finite()) {
        return Err(WaveError::Params("x_grid contains non-finite entries".into()));
    }
    let slice = |psi| WavefieldSlice {
        t,
        x_grid: x_grid.to_vec(),
        psi,
        method: PsiMethod::SpectralReconstruction,
    };
    if t == 0.0 || params.alpha == 0.0 {
        let phase = Complex64::new(0.0, t).exp();
        return Ok(slice(
            x_grid.iter().map(|x| phase * (-x.abs()).exp()).collect(),
        ));
    }
    let xi_max = x_grid.iter().map(|x| x.abs()).fold(0.0, f64::max) / (2.0 * t);
    let k_cut = K_CUT.max(1.25 * xi_max + 5.0);
    let nk = (k_cut / DK).ceil() as usize;
    let dk = k_cut / nk as f64;
    let tol = if t <= 60.0 { 1e-8 } else { 1e-7 };
    let phi = solve_phi(params, t, tol)?;
    let theta = theta_from_phi(&phi, t)?;
    let big = |k: f64| theta_big_from_phi(&phi, k, t).map_err(WaveError::from);
    let t_edge: Vec<Complex64> = (0..=nk)
        .into_par_iter()
        .map(|j| big(j as f64 * dk))
        .collect::<Result<_>>()?;
    let t_mid: Vec<Complex64> = (0..nk)
        .into_par_iter()
        .map(|j| big((j as f64 + 0.5) * dk))
        .collect::<Result<_>>()?;
    let over = |v: &[Complex64], off: f64| -> Vec<Complex64> {
        v.iter()
            .enumerate()
            .map(|(j, &a)| a / Complex64::new(1.0, (j as f64 + off) * dk))
            .collect()
    };
    let q_edge = over(&t_edge, 0.0);
    let q_mid = over(&t_mid, 0.5);
    let pref = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let bound = theta * Complex64::new(0.0, t).exp();
    let psi = x_grid
        .par_iter()
        .map(|&x| -> Result<Complex64> {
            let xa = x.abs();
            let xi = xa / (2.0 * t);
            let quad = quad_phase(&t_edge, &t_mid, dk, t, xi)?
                + quad_phase(&t_edge, &t_mid, dk, t, -xi)?
                - 2.0 * quad_phase(&q_edge, &q_mid, dk, t, xi)?;
            let cont = Complex64::new(0.0, xa * xa / (4.0 * t)).exp() * quad;
            Ok(bound * (-xa).exp() + pref * cont)
        })
        .collect::<Result<_>>()?;
    Ok(slice(psi))
}
