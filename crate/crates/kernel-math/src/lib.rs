//! Branch-convention-exact complex special functions shared by the solver
//! modules: the Faddeeva function w(z), the complex error function, the two
//! named square-root conventions, and the Volterra memory kernel eta(s).

mod branch;
mod eta;
mod faddeeva;

pub use branch::{sqrt_functional, sqrt_functional_on_cut, sqrt_lattice, CutSide, HalfPlane};
pub use eta::{eta_kernel, eta_regular, eta_singular, ETA_SINGULAR_COEFF};
pub use faddeeva::{erf_complex, erfc_complex, faddeeva_w};

use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum KernelError {
    #[error("non-finite input: {0}")]
    NonFinite(Complex64),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("result overflows double precision at z = {0}")]
    Overflow(Complex64),
}

pub type Result<T> = std::result::Result<T, KernelError>;

pub(crate) fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(KernelError::NonFinite(z))
    }
}
