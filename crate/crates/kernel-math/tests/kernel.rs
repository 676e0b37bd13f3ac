use kernel_math::*;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn sqrt_lattice_negative_real() {
    // sqrt(u) = -i sqrt(|u|) for u < 0
    assert_eq!(sqrt_lattice(c(-4.0, 0.0)).unwrap(), c(0.0, -2.0));
}

#[test]
fn sqrt_lattice_positive_real() {
    assert_eq!(sqrt_lattice(c(9.0, 0.0)).unwrap(), c(3.0, 0.0));
}

#[test]
fn sqrt_lattice_oracle() {
    // 50-digit evaluation of e^{-i pi/4} sqrt(i u) at u = -2 - 0.1i
    let want = c(0.035344302582442994407, -1.4146551592967945934);
    let got = sqrt_lattice(c(-2.0, -0.1)).unwrap();
    assert!(rel(got, want) < 1e-14, "got {got}");
}

#[test]
fn sqrt_functional_negative_real_from_above() {
    // continuation from the upper half plane: sqrt(-r) = +i sqrt(r)
    assert_eq!(sqrt_functional(c(-4.0, 0.0)).unwrap(), c(0.0, 2.0));
    assert_eq!(sqrt_functional(c(9.0, 0.0)).unwrap(), c(3.0, 0.0));
}

#[test]
fn sqrt_on_cut_sides() {
    let y = 0.37;
    let l = sqrt_functional_on_cut(y, CutSide::Left).unwrap();
    let r = sqrt_functional_on_cut(y, CutSide::Right).unwrap();
    assert!((l + r).norm() < 1e-16);
    // limits of sqrt_functional off the cut
    let eps = 1e-9;
    let ll = sqrt_functional(c(-eps, -y)).unwrap();
    let rr = sqrt_functional(c(eps, -y)).unwrap();
    assert!(rel(l, ll) < 1e-8);
    assert!(rel(r, rr) < 1e-8);
}

#[test]
fn nan_is_rejected() {
    assert!(sqrt_lattice(c(f64::NAN, 0.0)).is_err());
    assert!(sqrt_functional(c(0.0, f64::INFINITY)).is_err());
    assert!(erf_complex(c(f64::NAN, 1.0)).is_err());
}

#[test]
fn erf_examples() {
    assert_eq!(erf_complex(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    let got = erf_complex(c(1.0, 0.0)).unwrap();
    assert!(rel(got, c(0.84270079294971486934, 0.0)) < 1e-14, "got {got}");
    // z = (1-i)/sqrt(2) = sqrt(-i)
    let z = c(std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2);
    let want = c(0.96926421194421593038, -0.47414763664099424516);
    assert!(rel(erf_complex(z).unwrap(), want) < 1e-13);
}

#[test]
fn erf_moderate_arguments() {
    // spot values from a 50-digit oracle
    let cases = [
        (c(2.0, 3.0), c(-20.829461427614568389, 8.6873182714701631444)),
        (c(3.5, -1.0), c(0.99999890719126689688, -1.6217213345228874061e-6)),
        (c(0.25, 0.25), c(0.29339517532301456454, 0.26991349946314140917)),
        (c(-4.0, 1.5), c(-0.99999986527412279995, -3.0686734688227334382e-8)),
        (c(0.0, 2.0), c(0.0, 18.564802414575552599)),
    ];
    for (z, want) in cases {
        let got = erf_complex(z).unwrap();
        assert!(rel(got, want) < 1e-13, "z={z} got {got} want {want}");
    }
}

#[test]
fn faddeeva_spot_values() {
    // w(z) from a 50-digit oracle
    let cases = [
        (c(1.0, 1.0), c(0.30474420525691259246, 0.20821893820283162729)),
        (c(5.0, 0.1), c(0.0024069117169427119505, 0.11519442455072768717)),
        (c(0.0, 8.0), c(0.069985166200880927723, 0.0)),
        (c(-2.0, 0.5), c(0.10335882374136665895, -0.28478588475009374558)),
        (c(20.0, 20.0), c(0.014113538470519280935, 0.014095907649337069551)),
    ];
    for (z, want) in cases {
        let got = faddeeva_w(z).unwrap();
        assert!(rel(got, want) < 1e-13, "z={z} got {got} want {want}");
    }
}

#[test]
fn eta_oracle_values() {
    // 50-digit composition of erf and the branch rule
    let got1 = eta_kernel(1.0).unwrap();
    let want1 = c(0.077100150939095339807, 1.8491152923825024249);
    assert!(rel(got1, want1) < 1e-13, "got {got1}");
    let got10 = eta_kernel(10.0).unwrap();
    let want10 = c(-0.0030139947074954553648, 2.0081776465063190968);
    assert!(rel(got10, want10) < 1e-13, "got {got10}");
}

#[test]
fn eta_rejects_nonpositive() {
    assert!(eta_kernel(0.0).is_err());
    assert!(eta_kernel(-1.0).is_err());
    assert!(eta_kernel(f64::NAN).is_err());
}

#[test]
fn eta_regular_limit() {
    // regular part -> i (erf(0) + 1) = i as s -> 0+
    let mut s = 1e-1;
    while s >= 1e-12 {
        let reg = eta_regular(s).unwrap();
        assert!((reg - c(0.0, 1.0)).norm() < 1.0, "unbounded at s={s}");
        s /= 10.0;
    }
    let reg = eta_regular(1e-12).unwrap();
    assert!((reg - c(0.0, 1.0)).norm() < 1e-5);
}

#[test]
fn eta_split_consistency() {
    for s in [1e-6, 0.03, 0.7, 4.0, 55.0, 2e4] {
        let full = eta_kernel(s).unwrap();
        let sum = eta_regular(s).unwrap() + eta_singular(s).unwrap();
        assert!(rel(full, sum) < 1e-15);
    }
}
