//! Large-time theta(t) as residues plus Hankel branch-cut contributions:
//!
//!   theta(t) ~= sum_n 2i R_n e^{-i q_n t} / q_n
//!            + (i/pi) sum_j e^{-i b_j t} t^{-3/2}
//!              int_0^inf [Delta Phi(b_j - iy) / sqrt(y)] / (b_j - iy)
//!              sqrt(y) e^{-yt} d(yt),
//!
//! b_j = 1 + j omega the branch points; Delta Phi the jump of Phi across the
//! vertical cut below b_j. The y-integral is a generalized Gauss-Laguerre
//! quadrature (weight x^{1/2} e^{-x}, y = x/t) of the smooth factor.

use crate::Result;
use kernel_math::{sqrt_functional, sqrt_functional_on_cut, CutSide};
use lattice_solver::{
    default_pole_guess, find_resonance, functional_coeffs_from_roots, residue_array,
    solve_doubling, ModelParams,
};
use num_complex::Complex64;

const GLAG24_X: [f64; 24] = [
    0.09972136654239988,
    0.3992883836952505,
    0.8999188126790469,
    1.6036727750375408,
    2.5135002989187316,
    3.633311604452936,
    4.968074315696373,
    6.523943739185632,
    8.308435049517872,
    10.330650096094699,
    12.601577281096201,
    15.134491711359042,
    17.945496599911795,
    21.054269298345982,
    24.485113171240904,
    28.268483188647217,
    32.44327663952409,
    37.06042344849832,
    42.18882550504378,
    47.92589137451041,
    54.41805446915446,
    61.90641323314098,
    70.85156530732974,
    82.4356023303766,
];

const GLAG24_W: [f64; 24] = [
    0.057022961346226725,
    0.16947533453524147,
    0.2321171362124359,
    0.20537434178643174,
    0.13020084589572095,
    0.06177943215461854,
    0.022392837598438013,
    0.006256734564119222,
    0.0013508027591267308,
    0.00022483224977252572,
    2.867718762269991e-05,
    2.77656214167741e-06,
    2.014146144072286e-07,
    1.0760711740212059e-08,
    4.1416687297199846e-10,
    1.1163138844268095e-11,
    2.0310394034605322e-13,
    2.3762839266892247e-15,
    1.6737502374012743e-17,
    6.464890600930035e-20,
    1.1903197832279119e-22,
    8.303329331692586e-26,
    1.4203774027387522e-29,
    1.990469095653381e-34,
];

/// Phi_right - Phi_left at q = b_j - i y, on the vertical cut hanging from
/// the branch point b_j = 1 + j omega. Site roots are built with exact
/// arguments u_m = (m + j) omega - i y, and the on-cut site m = -j gets an
/// explicit side value, so no float-rounding side ambiguity can occur.
pub fn cut_discontinuity(params: &ModelParams, j: i64, y: f64) -> Result<Complex64> {
    let depth = 8usize;
    let target = j.unsigned_abs() as usize + 4;
    let w0 = target + (1usize << depth) - 1;
    let wi = w0 as i64;
    let omega = params.omega;
    let mut q = Vec::with_capacity(2 * w0 + 1);
    for m in -wi..=wi {
        q.push(Complex64::new(1.0 + (m + j) as f64 * omega, -y));
    }
    let mut roots = Vec::with_capacity(2 * w0 + 3);
    for m in -wi - 1..=wi + 1 {
        let u = Complex64::new((m + j) as f64 * omega, -y);
        roots.push(if m == -j {
            Complex64::default() // overridden per side below
        } else {
            sqrt_functional(u)?
        });
    }
    let site = (wi + 1 - j) as usize;
    let mut phi_side = [Complex64::default(); 2];
    for (i, side) in [CutSide::Left, CutSide::Right].into_iter().enumerate() {
        roots[site] = sqrt_functional_on_cut(y, side)?;
        let c = functional_coeffs_from_roots(params, &q, &roots)?;
        let sol = solve_doubling(&c, depth, target, Complex64::default())?;
        phi_side[i] = sol.g_at(0).expect("center site in window");
    }
    Ok(phi_side[1] - phi_side[0])
}

/// Smooth cut factors S_g = Delta Phi(x_g/t) / sqrt(x_g/t) tabulated at the
/// Laguerre nodes for one t; reused by theta(t) and by the finite-time
/// spectrum tail (the k-dependence is analytic given these).
#[derive(Debug, Clone)]
pub struct CutTable {
    pub t: f64,
    /// (b_j, S at the 24 nodes)
    pub rows: Vec<(f64, [Complex64; 24])>,
}

/// Precomputed pole array and cut list for evaluating theta(t) at large t.
#[derive(Debug, Clone)]
pub struct LargeTimeTheta {
    pub params: ModelParams,
    /// (q_n, R_n) of the omega-spaced resonance array
    pub poles: Vec<(Complex64, Complex64)>,
    /// cut indices j with branch points |b_j| below the frequency cap
    pub jlist: Vec<i64>,
}

impl LargeTimeTheta {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let res = find_resonance(params, default_pole_guess(params))?;
        let poles = residue_array(params, &res, 40)?;
        let jmax = (31.0 / params.omega).ceil() as i64;
        let jlist = (-jmax..=jmax)
            .filter(|&j| (1.0 + j as f64 * params.omega).abs() < 30.0)
            .collect();
        Ok(Self { params: *params, poles, jlist })
    }

    pub fn residue_part(&self, t: f64) -> Complex64 {
        let mut s = Complex64::default();
        for &(q, r) in &self.poles {
            s += 2.0 * Complex64::i() * r * (-Complex64::i() * q * t).exp() / q;
        }
        s
    }

    pub fn cut_table(&self, t: f64) -> Result<CutTable> {
        let mut rows = Vec::with_capacity(self.jlist.len());
        for &j in &self.jlist {
            let b = 1.0 + j as f64 * self.params.omega;
            let mut s = [Complex64::default(); 24];
            for (g, sg) in s.iter_mut().enumerate() {
                let y = GLAG24_X[g] / t;
                *sg = cut_discontinuity(&self.params, j, y)? / y.sqrt();
            }
            rows.push((b, s));
        }
        Ok(CutTable { t, rows })
    }

    pub fn cut_part_from(&self, table: &CutTable) -> Complex64 {
        let t = table.t;
        let mut total = Complex64::default();
        for &(b, s) in &table.rows {
            let mut integral = Complex64::default();
            for g in 0..24 {
                integral += GLAG24_W[g] * s[g] / Complex64::new(b, -GLAG24_X[g] / t);
            }
            total += Complex64::i() / std::f64::consts::PI
                * (-Complex64::i() * b * t).exp()
                * t.powf(-1.5)
                * integral;
        }
        total
    }

    pub fn cut_part(&self, t: f64) -> Result<Complex64> {
        Ok(self.cut_part_from(&self.cut_table(t)?))
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        Ok(self.residue_part(t) + self.cut_part(t)?)
    }

    /// int_t^inf phi(s) e^{i beta s} ds, split like theta itself into the
    /// residue series and the cut series:
    ///   sum_n R_n e^{i(beta - q_n)t} / (beta - q_n)
    /// + sum_j (1/2 pi i) e^{i(beta - b_j)t} t^{-3/2}
    ///     sum_g w_g S_g / (x_g/t - i(beta - b_j)).
    /// (At beta = 0 this reduces to -theta(t)/2i, i.e. the eval() pieces.)
    /// Accuracy degrades when beta sits at a branch point b_j, where the
    /// integrand's y^{-1/2} endpoint behaviour defeats the x^{1/2} weight.
    pub fn transform_tail(&self, table: &CutTable, beta: f64) -> Complex64 {
        let t = table.t;
        let mut tail = Complex64::default();
        for &(q, r) in &self.poles {
            let d = beta - q;
            tail += r * (Complex64::i() * d * t).exp() / d;
        }
        for &(b, s) in &table.rows {
            let delta = beta - b;
            let mut integral = Complex64::default();
            for g in 0..24 {
                integral += GLAG24_W[g] * s[g] / Complex64::new(GLAG24_X[g] / t, -delta);
            }
            tail += (Complex64::i() * delta * t).exp() * t.powf(-1.5) * integral
                / (2.0 * std::f64::consts::PI * Complex64::i());
        }
        tail
    }
}
