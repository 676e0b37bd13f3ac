use crate::cli::SurvivalArgs;
use crate::output::{CliError, Result, Table};
use observables::survival_curve;

pub fn run(a: SurvivalArgs) -> Result<()> {
    let p = super::model(&a.model)?;
    if a.t_min < 0.0 {
        return Err(CliError::Config(format!("t-min must be >= 0; got {}", a.t_min)));
    }
    let ts = super::linspace(a.t_min, a.t_max, a.t_count, "t")?;
    let curve = survival_curve(&p, &ts)?;
    let command = format!(
        "deltaion survival --alpha {} --omega {} --t-min {} --t-max {} --t-count {}",
        p.alpha, p.omega, a.t_min, a.t_max, a.t_count
    );
    let mut table = Table::new(command, vec!["t", "re_theta", "im_theta", "abs2"]);
    table.meta("alpha", p.alpha);
    table.meta("omega", p.omega);
    table.meta("method", "volterra oracle, residues + branch cuts past 50 periods");
    for (t, th) in curve.t_grid.iter().zip(&curve.theta) {
        table.rows.push(vec![*t, th.re, th.im, th.norm_sqr()]);
    }
    table.emit(a.out.output.as_deref(), a.out.format)
}
