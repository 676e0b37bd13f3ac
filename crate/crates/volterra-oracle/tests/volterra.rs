use lattice_solver::{solve_functional_equation, Family, ModelParams};
use num_complex::Complex64;
use volterra_oracle::*;

use kernel_math::HalfPlane;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn zero_drive_phi_is_zero() {
    let p = ModelParams::new(0.0, 1.51).unwrap();
    let phi = solve_phi(&p, 20.0, 1e-8).unwrap();
    assert!(phi.values.iter().all(|z| z.norm() == 0.0));
    for t in [0.0, 3.3, 20.0] {
        assert!((theta_from_phi(&phi, t).unwrap() - 1.0).norm() < 1e-15);
    }
}

#[test]
fn phi_starts_at_zero_and_theta0_is_one() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 5.0, 1e-8).unwrap();
    assert_eq!(phi.values[0], Complex64::default());
    assert!((theta_from_phi(&phi, 0.0).unwrap() - 1.0).norm() < 1e-15);
    assert!((theta_big_from_phi(&phi, 0.7, 0.0).unwrap()).norm() < 1e-15);
}

#[test]
fn first_order_picard() {
    // phi = alpha sin(omega t) + O(alpha^2) uniformly on one period
    let alpha = 1e-4;
    let p = ModelParams::new(alpha, 1.51).unwrap();
    let t_max = p.period();
    let phi = solve_phi(&p, t_max, 1e-10).unwrap();
    let mut worst = 0.0f64;
    for (t, v) in phi.mesh.iter().zip(&phi.values) {
        if *t > t_max {
            break;
        }
        worst = worst.max((v - alpha * (p.omega * t).sin()).norm());
    }
    assert!(worst < 100.0 * alpha * alpha, "first-order defect {worst:.3e}");
}

#[test]
fn range_errors() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 5.0, 1e-8).unwrap();
    assert!(matches!(theta_from_phi(&phi, 6.0), Err(OracleError::Range { .. })));
    assert!(matches!(theta_from_phi(&phi, -0.1), Err(OracleError::Range { .. })));
    assert!(matches!(theta_big_from_phi(&phi, 1.0, 6.0), Err(OracleError::Range { .. })));
    assert!(matches!(solve_phi(&p, 5.0, 1e-12), Err(OracleError::Params(_))));
    assert!(matches!(
        solve_phi(&p, 201.0 * p.period(), 1e-8),
        Err(OracleError::Params(_))
    ));
}

#[test]
fn theta_big_vanishes_at_k_zero() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 10.0, 1e-8).unwrap();
    for t in [0.0, 4.0, 10.0] {
        assert_eq!(theta_big_from_phi(&phi, 0.0, t).unwrap(), Complex64::default());
    }
}

#[test]
fn partial_transform_at_zero_phase_matches_theta() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 10.0, 1e-8).unwrap();
    for t in [2.7, 6.283, 10.0] {
        let i0 = partial_transform(&phi, 0.0, t).unwrap();
        let th = theta_from_phi(&phi, t).unwrap();
        assert!(((th - 1.0) / (2.0 * Complex64::i()) - i0).norm() < 1e-10);
    }
}

#[test]
fn filon_against_first_order_closed_form() {
    // at first order in alpha, I(beta,t) = alpha int_0^t sin(omega s) e^{i beta s} ds
    let alpha = 1e-5;
    let omega = 1.51;
    let p = ModelParams::new(alpha, omega).unwrap();
    let phi = solve_phi(&p, 12.0, 1e-10).unwrap();
    let closed = |beta: f64, t: f64| -> Complex64 {
        let term = |w: f64| -> Complex64 {
            let z = c(0.0, w);
            ((z * t).exp() - 1.0) / z
        };
        alpha * (term(beta + omega) - term(beta - omega)) / (2.0 * Complex64::i())
    };
    for beta in [0.3, 1.0, 5.7, 40.0] {
        for t in [1.234, 7.0, 12.0] {
            let got = partial_transform(&phi, beta, t).unwrap();
            let want = closed(beta, t);
            assert!(
                (got - want).norm() < 2e-3 * alpha + 1e-14,
                "beta={beta} t={t}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn mesh_self_convergence_order() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let t_max = 20.0;
    let th = |h: f64| {
        let phi = solve_phi_with_step(&p, t_max, h).unwrap();
        theta_from_phi(&phi, t_max).unwrap()
    };
    let (a, b, d) = (th(0.02), th(0.01), th(0.005));
    let d1 = (a - b).norm();
    let d2 = (b - d).norm();
    let order = (d1 / d2).log2();
    assert!(order >= 2.0, "empirical order {order:.2}");
    // production tolerance: halving the mesh moves theta(t_max) by < 1e-8
    let phi = solve_phi(&p, t_max, 1e-8).unwrap();
    let half = solve_phi_with_step(&p, t_max, phi.step() / 2.0).unwrap();
    let diff = (theta_from_phi(&phi, t_max).unwrap() - theta_from_phi(&half, t_max).unwrap())
        .norm();
    assert!(diff < 1e-8, "halving shift {diff:.3e}");
}

/// phi and theta on the line Im q = c by sigma-columns of the functional
/// lattice: one solve per sigma gives Phi at sigma + n*omega for all n.
fn laplace_line(
    p: &ModelParams,
    ts: &[f64],
    c_im: f64,
    ncols: usize,
    nmax: usize,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut qs = Vec::new();
    let mut phis = Vec::new();
    for j in 0..ncols {
        let sigma = c((j as f64 + 0.5) * p.omega / ncols as f64, c_im);
        let sol = solve_functional_equation(p, Family::Functional, sigma, nmax, HalfPlane::FromAbove)
            .unwrap();
        for n in -(nmax as i64)..=nmax as i64 {
            qs.push(sigma + n as f64 * p.omega);
            phis.push(sol.g_at(n).unwrap());
        }
    }
    let hq = p.omega / ncols as f64;
    let mut phi_t = Vec::new();
    let mut theta_t = Vec::new();
    for &t in ts {
        let mut s_phi = Complex64::default();
        let mut s_th = Complex64::default();
        for (q, f) in qs.iter().zip(&phis) {
            let e = (-Complex64::i() * q * t).exp();
            s_phi += e * f;
            s_th += e * f / q;
        }
        phi_t.push(s_phi * hq / std::f64::consts::TAU);
        theta_t.push(1.0 - s_th * hq / std::f64::consts::PI);
    }
    (phi_t, theta_t)
}

#[test]
fn cross_route_against_laplace() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let t3 = 3.0 * p.period();
    let ts = [5.0, t3, 2.0 * t3];
    let phi = solve_phi(&p, 2.0 * t3, 1e-8).unwrap();
    let (phi_l, th_l) = laplace_line(&p, &ts, 0.05, 400, 800);
    for (i, &t) in ts.iter().enumerate() {
        let i_node = (t / phi.step()).round() as usize;
        let pv = phi.values[i_node];
        let pl = phi_l[i];
        let dt = i_node as f64 * phi.step() - t;
        // compare at the nearest node; move the Laplace value by phi' dt
        let slope = (phi.values[i_node + 1] - phi.values[i_node - 1]) / (2.0 * phi.step());
        assert!(
            (pv - (pl + slope * dt)).norm() < 1e-6,
            "phi mismatch at t={t}: {:.3e}",
            (pv - pl).norm()
        );
        let tv = theta_from_phi(&phi, t).unwrap();
        assert!(
            (tv - th_l[i]).norm() < 1e-6,
            "theta mismatch at t={t}: {:.3e}",
            (tv - th_l[i]).norm()
        );
    }
}

#[test]
fn decay_slope_matches_perturbative_rate() {
    // -log|theta|^2 vs t over [5, 40] against the Eq.-(8) rate
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 40.0, 1e-8).unwrap();
    let mut pts = Vec::new();
    let mut t = 5.0;
    while t <= 40.0 {
        let th = theta_from_phi(&phi, t).unwrap();
        pts.push((t, -th.norm_sqr().ln()));
        t += 0.5;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let rate = p.alpha * p.alpha * (p.omega - 1.0).sqrt() / p.omega;
    let rel = (slope - rate).abs() / rate;
    // at alpha = 0.5 the true rate 2|Im q_pole| sits 12% below the
    // perturbative formula (the alpha^2 correction is real, and the
    // extrapolated alpha -> 0 limit does match the formula; see the
    // decisions ledger), so the guard is 15%
    assert!(rel < 0.15, "slope {slope:.6} vs rate {rate:.6} (rel {rel:.3})");
}

#[test]
fn fig4_peak_ordering() {
    // max_k |Theta(k,t)|^2 grows from t = 5T to t = 10T (toward t = infinity)
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let t10 = 10.0 * p.period();
    let phi = solve_phi(&p, t10, 1e-8).unwrap();
    let peak = |t: f64| -> f64 {
        let mut best = 0.0f64;
        let mut k = 0.3;
        while k <= 1.0 {
            best = best.max(theta_big_from_phi(&phi, k, t).unwrap().norm_sqr());
            k += 0.002;
        }
        best
    };
    let m5 = peak(5.0 * p.period());
    let m10 = peak(t10);
    assert!(m5 < m10, "|Theta|^2 maxima not increasing: {m5} vs {m10}");
}

#[test]
fn unitarity_at_sampled_times() {
    let p = ModelParams::new(0.5, 1.51).unwrap();
    let phi = solve_phi(&p, 15.0, 1e-8).unwrap();
    for &t in &[5.0, 15.0] {
        let th2 = theta_from_phi(&phi, t).unwrap().norm_sqr();
        // |Theta|^2 is even in k: integrate [0, k_cut] and double (Simpson)
        // tail beyond k_cut is ~ (4/pi)|phi(t)|^2/(3 k_cut^3) ~ 1e-8
        let k_cut = 80.0;
        let nk = 32000; // even
        let dk = k_cut / nk as f64;
        let mut s = 0.0;
        for i in 0..=nk {
            let w = if i == 0 || i == nk {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            s += w * theta_big_from_phi(&phi, i as f64 * dk, t).unwrap().norm_sqr();
        }
        let integral = 2.0 * s * dk / 3.0;
        let defect = (th2 + integral - 1.0).abs();
        assert!(defect < 1e-6, "unitarity defect {defect:.3e} at t={t}");
    }
}
