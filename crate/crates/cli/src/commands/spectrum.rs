use crate::cli::{SpectrumArgs, TimeArg};
use crate::output::{CliError, Result, Table};
use observables::{spectrum_finite_time, spectrum_infinite_time, Method};

pub fn run(a: SpectrumArgs) -> Result<()> {
    let p = super::model(&a.model)?;
    if a.k_min < 0.0 {
        return Err(CliError::Config(format!("k-min must be >= 0; got {}", a.k_min)));
    }
    let ks = super::linspace(a.k_min, a.k_max, a.k_count, "k")?;
    let slice = match a.t {
        TimeArg::Infinite => spectrum_infinite_time(&p, &ks)?,
        TimeArg::Finite(t) => spectrum_finite_time(&p, &ks, t)?,
    };
    let command = format!(
        "deltaion spectrum --alpha {} --omega {} --t {} --k-min {} --k-max {} --k-count {}",
        p.alpha, p.omega, a.t, a.k_min, a.k_max, a.k_count
    );
    let mut table = Table::new(command, vec!["k", "re_theta_big", "im_theta_big", "abs2"]);
    table.meta("alpha", p.alpha);
    table.meta("omega", p.omega);
    table.meta("t", a.t);
    table.meta(
        "method",
        match slice.method {
            Method::TimeDomain => "time-domain product integration",
            Method::LaplaceBoundary => "laplace boundary values",
            Method::SmallAlphaClosedForm => "small-alpha closed form",
        },
    );
    for (k, amp) in slice.k_grid.iter().zip(&slice.amplitude) {
        table.rows.push(vec![*k, amp.re, amp.im, amp.norm_sqr()]);
    }
    table.emit(a.out.output.as_deref(), a.out.format)
}
