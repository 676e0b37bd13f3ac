//! Memory kernel of the Volterra equation:
//!
//!   eta(s) = i ( 1 + erf(sqrt(is)) + e^{-is} / (sqrt(pi) sqrt(is)) ),
//!   sqrt(is) = e^{i pi/4} sqrt(s).
//!
//! The 1/sqrt(s) singular factor is exposed separately so the
//! product-integration rule can integrate it exactly.

use crate::{erf_complex, KernelError, Result};
use num_complex::Complex64;

const SQRT_PI: f64 = 1.7724538509055160273;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Coefficient C of the singular part eta_sing(s) = C e^{-is} / sqrt(s),
/// C = e^{i pi/4} / sqrt(pi).
pub const ETA_SINGULAR_COEFF: Complex64 = Complex64::new(
    FRAC_1_SQRT_2 / SQRT_PI,
    FRAC_1_SQRT_2 / SQRT_PI,
);

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(KernelError::Domain("eta_kernel requires s > 0"));
    }
    Ok(())
}

/// Regular part i (1 + erf(e^{i pi/4} sqrt(s))); bounded, -> i as s -> 0+.
pub fn eta_regular(s: f64) -> Result<Complex64> {
    check_s(s)?;
    let r = s.sqrt();
    let root = Complex64::new(FRAC_1_SQRT_2 * r, FRAC_1_SQRT_2 * r);
    let e = erf_complex(root)?;
    Ok(Complex64::new(-(e.im), 1.0 + e.re))
}

/// Singular part C e^{-is} / sqrt(s).
pub fn eta_singular(s: f64) -> Result<Complex64> {
    check_s(s)?;
    Ok(ETA_SINGULAR_COEFF * Complex64::new(0.0, -s).exp() / s.sqrt())
}

/// Full kernel eta(s) = eta_regular(s) + eta_singular(s).
pub fn eta_kernel(s: f64) -> Result<Complex64> {
    Ok(eta_regular(s)? + eta_singular(s)?)
}
