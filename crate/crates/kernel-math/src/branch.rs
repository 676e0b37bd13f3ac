//! The two square-root branch conventions used by the Laplace-domain
//! recurrences. They are distinct operations on purpose: conflating them is
//! the main correctness hazard of the whole solver.

use crate::{check_finite, Result};
use num_complex::Complex64;

/// Approach direction for boundary values on the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    FromAbove,
    FromBelow,
}

/// Side tag for evaluation exactly on a branch cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Left,
    Right,
}

/// Convention A ("functional-equation root"): positive on the positive real
/// axis, continued from the upper half plane; cut along the negative
/// imaginary axis. sqrt_functional(u) = e^{i pi/4} sqrt(-iu) with the
/// principal root.
pub fn sqrt_functional(u: Complex64) -> Result<Complex64> {
    check_finite(u)?;
    if u.im == 0.0 {
        // exact boundary values: +sqrt(u) for u > 0, +i sqrt(|u|) for u < 0
        return Ok(if u.re >= 0.0 {
            Complex64::new(u.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-u.re).sqrt())
        });
    }
    let miu = Complex64::new(u.im, -u.re);
    let r = miu.sqrt();
    Ok(Complex64::new(
        std::f64::consts::FRAC_1_SQRT_2 * (r.re - r.im),
        std::f64::consts::FRAC_1_SQRT_2 * (r.re + r.im),
    ))
}

/// Convention A evaluated exactly on its cut u = -iy, y > 0, with the side
/// chosen explicitly: left of the cut gives e^{3i pi/4} sqrt(y), right gives
/// the opposite sign. Needed by the Hankel-loop quadrature, where relying on
/// the float sign of a residual real part would silently pick a side.
pub fn sqrt_functional_on_cut(y: f64, side: CutSide) -> Result<Complex64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(crate::KernelError::Domain("cut parameter must be positive"));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2 * y.sqrt();
    Ok(match side {
        CutSide::Left => Complex64::new(-r, r),
        CutSide::Right => Complex64::new(r, -r),
    })
}

/// Convention B ("lattice root", the wavefunction recurrence): sqrt(u) > 0
/// for u > 0 and sqrt(u) = -i sqrt(|u|) for u < 0; continuous with these
/// values from the lower half q-plane. sqrt_lattice(u) = e^{-i pi/4} sqrt(iu).
pub fn sqrt_lattice(u: Complex64) -> Result<Complex64> {
    check_finite(u)?;
    if u.im == 0.0 {
        return Ok(if u.re >= 0.0 {
            Complex64::new(u.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, -(-u.re).sqrt())
        });
    }
    let iu = Complex64::new(-u.im, u.re);
    let r = iu.sqrt();
    Ok(Complex64::new(
        std::f64::consts::FRAC_1_SQRT_2 * (r.re + r.im),
        std::f64::consts::FRAC_1_SQRT_2 * (r.im - r.re),
    ))
}
