use crate::cli::{PsiMethodArg, WavefunctionArgs};
use crate::output::{CliError, Result, Table};
use wavefunction::{invert_moderate, spectral_reconstruct, LaplaceField};

pub fn run(a: WavefunctionArgs) -> Result<()> {
    let p = super::model(&a.model)?;
    if !(a.t >= 0.0) {
        return Err(CliError::Config(format!("t must be >= 0; got {}", a.t)));
    }
    let xs = super::linspace(a.x_min, a.x_max, a.x_count, "x")?;
    let slice = match a.method {
        PsiMethodArg::Contour => invert_moderate(&LaplaceField::new(p), a.t, &xs)?,
        PsiMethodArg::Spectral => spectral_reconstruct(&p, a.t, &xs)?,
    };
    let method = match a.method {
        PsiMethodArg::Contour => "contour",
        PsiMethodArg::Spectral => "spectral",
    };
    let command = format!(
        "deltaion wavefunction --alpha {} --omega {} --t {} --x-min {} --x-max {} \
         --x-count {} --method {}",
        p.alpha, p.omega, a.t, a.x_min, a.x_max, a.x_count, method
    );
    let mut table = Table::new(command, vec!["x", "re_psi", "im_psi", "abs2"]);
    table.meta("alpha", p.alpha);
    table.meta("omega", p.omega);
    table.meta("t", a.t);
    table.meta("method", method);
    for (x, psi) in slice.x_grid.iter().zip(&slice.psi) {
        table.rows.push(vec![*x, psi.re, psi.im, psi.norm_sqr()]);
    }
    table.emit(a.out.output.as_deref(), a.out.format)
}
