use crate::{Result, SolverError};

/// Drive parameters (alpha, omega) in units hbar = 2m = 1, E_b = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub omega: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, omega: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(SolverError::Params(format!("alpha must be >= 0, got {alpha}")));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(SolverError::Params(format!("omega must be > 0, got {omega}")));
        }
        Ok(Self { alpha, omega })
    }

    /// Least m with m*omega > 1: the minimum "photon" number for ionization.
    pub fn m(&self) -> i64 {
        (1.0 / self.omega).floor() as i64 + 1
    }

    /// Drive period T = 2 pi / omega.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }

    /// True when 1/omega is within 1e-3 of an integer: cusped resonance
    /// peaks, power-law decay, and degraded exponential-fit diagnostics.
    pub fn cusp_regime(&self) -> bool {
        let inv = 1.0 / self.omega;
        (inv - inv.round()).abs() < 1e-3
    }
}
