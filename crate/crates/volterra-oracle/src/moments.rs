//! Exact panel moments of the memory kernel against local polynomials:
//!
//!   mu[j][l] = int_{jh}^{(j+1)h} eta(u) ((u - jh)/h)^l du,   l = 0, 1, 2.
//!
//! The u = v^2 substitution removes the 1/sqrt(u) singularity of eta, so a
//! fixed Gauss-Legendre rule in v integrates every panel (including j = 0)
//! to near machine precision.

use crate::Result;
use kernel_math::eta_kernel;
use num_complex::Complex64;

const GL12_X: [f64; 12] = [
    -0.9815606342467192,
    -0.9041172563704748,
    -0.7699026741943047,
    -0.5873179542866175,
    -0.3678314989981802,
    -0.1252334085114689,
    0.1252334085114689,
    0.3678314989981802,
    0.5873179542866175,
    0.7699026741943047,
    0.9041172563704748,
    0.9815606342467192,
];

const GL12_W: [f64; 12] = [
    0.04717533638651202,
    0.10693932599531888,
    0.1600783285433461,
    0.20316742672306565,
    0.23349253653835464,
    0.2491470458134027,
    0.2491470458134027,
    0.23349253653835464,
    0.20316742672306565,
    0.1600783285433461,
    0.10693932599531888,
    0.04717533638651202,
];

pub(crate) fn panel_moments(h: f64, panels: usize) -> Result<Vec<[Complex64; 3]>> {
    let mut mu = Vec::with_capacity(panels);
    for j in 0..panels {
        let va = (j as f64 * h).sqrt();
        let vb = ((j + 1) as f64 * h).sqrt();
        let half = 0.5 * (vb - va);
        let mid = 0.5 * (va + vb);
        let mut m = [Complex64::default(); 3];
        for g in 0..12 {
            let v = half * GL12_X[g] + mid;
            let u = v * v;
            // eta(u) du = eta(v^2) 2v dv
            let ev = eta_kernel(u)? * (2.0 * v * half * GL12_W[g]);
            let s = (u - j as f64 * h) / h;
            m[0] += ev;
            m[1] += ev * s;
            m[2] += ev * (s * s);
        }
        mu.push(m);
    }
    Ok(mu)
}
