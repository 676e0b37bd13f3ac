use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMethod {
    ContourInversion,
    StationaryPhase,
    SpectralReconstruction,
}

/// psi(x,t) sampled on an x-grid at one time.
#[derive(Debug, Clone)]
pub struct WavefieldSlice {
    pub t: f64,
    pub x_grid: Vec<f64>,
    pub psi: Vec<Complex64>,
    pub method: PsiMethod,
}

impl WavefieldSlice {
    /// sqrt of the trapezoid integral of |psi|^2 over the slice's own grid.
    pub fn norm_l2(&self) -> f64 {
        let mut s = 0.0;
        for i in 1..self.x_grid.len() {
            let h = self.x_grid[i] - self.x_grid[i - 1];
            s += 0.5 * h * (self.psi[i].norm_sqr() + self.psi[i - 1].norm_sqr());
        }
        s.sqrt()
    }

    /// max |psi(x) - psi(-x)| over grid points whose mirror is also on the
    /// grid (exactly, up to float representation).
    pub fn parity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, &x) in self.x_grid.iter().enumerate() {
            if let Some(j) = self.x_grid.iter().position(|&y| y == -x) {
                worst = worst.max((self.psi[i] - self.psi[j]).norm());
            }
        }
        worst
    }
}
