use crate::{ModelParams, Result, SolverError};
use kernel_math::{sqrt_functional, sqrt_lattice, HalfPlane};
use num_complex::Complex64;

/// Which recurrence the coefficients encode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Eq. (7) for Phi(q): a_n, b_n couple through the functional-equation
    /// root at q_{n-1}-1 and q_{n+1}-1, f_n = alpha omega/(omega^2 - q_n^2).
    Functional,
    /// Eq. (14) for g_n = psi_hat(0, -i q_n): lattice root at -q_n,
    /// f_n = i/(q_n + 1).
    Lattice,
}

/// Level-0 coefficient arrays of g_n = a_n g_{n-1} + b_n g_{n+1} + f_n over
/// the window n = -W..=W.
#[derive(Debug, Clone)]
pub struct Coeffs {
    pub half_window: usize,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub f: Vec<Complex64>,
}

impl Coeffs {
    pub fn idx(&self, n: i64) -> usize {
        (n + self.half_window as i64) as usize
    }

    fn check(self) -> Result<Self> {
        for (i, ((a, b), f)) in self.a.iter().zip(&self.b).zip(&self.f).enumerate() {
            if !(a.is_finite() && b.is_finite() && f.is_finite()) {
                return Err(SolverError::SingularCoefficient(
                    i as i64 - self.half_window as i64,
                ));
            }
        }
        Ok(self)
    }
}

fn functional_root(u: Complex64, approach: HalfPlane) -> Result<Complex64> {
    let s = sqrt_functional(u)?;
    // sqrt_functional returns the boundary value from above on the real
    // axis; the from-below limit flips the sign on the negative half-axis
    if approach == HalfPlane::FromBelow && u.im == 0.0 && u.re < 0.0 {
        return Ok(-s);
    }
    Ok(s)
}

/// Build the level-0 coefficients for the given family at offset sigma.
pub fn family_coeffs(
    params: &ModelParams,
    family: Family,
    sigma: Complex64,
    half_window: usize,
    approach: HalfPlane,
) -> Result<Coeffs> {
    let w = half_window as i64;
    let len = 2 * half_window + 1;
    let (alpha, omega) = (params.alpha, params.omega);
    let mut a = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    let mut f = Vec::with_capacity(len);
    match family {
        Family::Functional => {
            // roots at q_m - 1 for m = -W-1..=W+1
            let mut s = Vec::with_capacity(len + 2);
            for m in -w - 1..=w + 1 {
                let q = sigma + m as f64 * omega;
                s.push(functional_root(q - 1.0, approach)?);
            }
            let half_ia = Complex64::new(0.0, 0.5 * alpha);
            for n in -w..=w {
                let q = sigma + n as f64 * omega;
                let i0 = (n + w + 1) as usize;
                a.push(-half_ia / (Complex64::i() * s[i0 - 1] + 1.0));
                b.push(half_ia / (Complex64::i() * s[i0 + 1] + 1.0));
                f.push(Complex64::new(alpha * omega, 0.0) / (omega * omega - q * q));
            }
        }
        Family::Lattice => {
            let half_ia = Complex64::new(0.0, 0.5 * alpha);
            for n in -w..=w {
                let q = sigma + n as f64 * omega;
                let an = half_ia / (sqrt_lattice(-q)? - 1.0);
                a.push(an);
                b.push(-an);
                f.push(Complex64::i() / (q + 1.0));
            }
        }
    }
    Coeffs { half_window, a, b, f }.check()
}

/// Family-Functional coefficients from caller-supplied site roots: q has
/// length 2W+1 (sites -W..=W), roots has length 2W+3 (root of q_m - 1 for
/// m = -W-1..=W+1). Used by the Hankel-loop quadrature, which must override
/// the root of the on-cut site with an explicit side value.
pub fn functional_coeffs_from_roots(
    params: &ModelParams,
    q: &[Complex64],
    roots: &[Complex64],
) -> Result<Coeffs> {
    assert_eq!(roots.len(), q.len() + 2);
    let half_window = (q.len() - 1) / 2;
    let (alpha, omega) = (params.alpha, params.omega);
    let half_ia = Complex64::new(0.0, 0.5 * alpha);
    let mut a = Vec::with_capacity(q.len());
    let mut b = Vec::with_capacity(q.len());
    let mut f = Vec::with_capacity(q.len());
    for (i, &qn) in q.iter().enumerate() {
        a.push(-half_ia / (Complex64::i() * roots[i] + 1.0));
        b.push(half_ia / (Complex64::i() * roots[i + 2] + 1.0));
        f.push(Complex64::new(alpha * omega, 0.0) / (omega * omega - qn * qn));
    }
    Coeffs { half_window, a, b, f }.check()
}
