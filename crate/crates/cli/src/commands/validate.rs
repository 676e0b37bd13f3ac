use crate::cli::{Format, ValidateArgs};
use crate::output::{fmt_f64, CliError, Result};
use kernel_math::HalfPlane;
use lattice_solver::{solve_continued_fraction, solve_functional_equation, Family};
use num_complex::Complex64;
use std::io::Write;
use volterra_oracle::{solve_phi, theta_from_phi};

struct Check {
    name: &'static str,
    measured: f64,
    tolerance: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

pub fn run(a: ValidateArgs) -> Result<()> {
    let p = super::model(&a.model)?;
    let t = a.t.unwrap_or(10.0 * p.period());
    if !(t > 0.0) || t > 50.0 * p.period() {
        return Err(CliError::Config(format!(
            "validate needs 0 < t <= 50 periods; got t = {t}"
        )));
    }

    let mut checks = Vec::new();

    // unitarity: |theta(t)|^2 + int |Theta(k,t)|^2 dk = 1
    checks.push(Check {
        name: "unitarity",
        measured: observables::unitarity_defect(&p, t)?,
        tolerance: 1e-6,
    });

    // dual-solver lattice: continued fraction vs doubling, plus the
    // recurrence residual of the doubling solution
    let sigma = Complex64::new(0.37 * p.omega, 0.0);
    let d = solve_functional_equation(&p, Family::Functional, sigma, 64, HalfPlane::FromAbove)?;
    let f = solve_continued_fraction(&p, Family::Functional, sigma, 64, HalfPlane::FromAbove)?;
    let gmax = d.g.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let diff = d
        .g
        .iter()
        .zip(&f.g)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    checks.push(Check { name: "dual_solver_agreement", measured: diff / gmax, tolerance: 1e-11 });
    checks.push(Check { name: "lattice_residual", measured: d.residual_norm, tolerance: 1e-12 });

    // dual-route theta: time-domain oracle vs Laplace-line quadrature
    let theta_diff = if p.alpha == 0.0 {
        0.0 // theta = 1 identically
    } else {
        let t_hi = t.min(50.0);
        let ts: Vec<f64> = (1..=10).map(|i| t_hi * i as f64 / 10.0).collect();
        let phi = solve_phi(&p, t_hi, 1e-8)?;
        let line = observables::theta_laplace_line(&p, &ts, 0.05)?;
        ts.iter()
            .zip(&line)
            .map(|(&s, &l)| Ok::<_, CliError>((theta_from_phi(&phi, s)? - l).norm()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max)
    };
    checks.push(Check { name: "dual_route_theta", measured: theta_diff, tolerance: 1e-6 });

    emit(&a, &p, t, &checks)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass()).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed checks: {}", failed.join(", "))))
    }
}

fn emit(a: &ValidateArgs, p: &lattice_solver::ModelParams, t: f64, checks: &[Check]) -> Result<()> {
    let command = format!(
        "deltaion validate --alpha {} --omega {} --t {}",
        p.alpha, p.omega, t
    );
    let mut buf = Vec::new();
    match a.out.format {
        Format::Csv => {
            writeln!(buf, "# command: {command}")?;
            writeln!(buf, "# version: {}", env!("CARGO_PKG_VERSION"))?;
            writeln!(buf, "check,measured,tolerance,status")?;
            for c in checks {
                writeln!(
                    buf,
                    "{},{},{},{}",
                    c.name,
                    fmt_f64(c.measured),
                    fmt_f64(c.tolerance),
                    if c.pass() { "pass" } else { "fail" }
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!([
                        c.name,
                        c.measured,
                        c.tolerance,
                        if c.pass() { "pass" } else { "fail" }
                    ])
                })
                .collect();
            let doc = serde_json::json!({
                "meta": {
                    "command": command,
                    "version": env!("CARGO_PKG_VERSION"),
                },
                "data": {
                    "columns": ["check", "measured", "tolerance", "status"],
                    "rows": rows,
                },
            });
            writeln!(buf, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    match a.out.output.as_deref() {
        Some(path) => std::fs::write(path, &buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}
