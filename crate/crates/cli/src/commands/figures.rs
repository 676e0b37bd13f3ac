use crate::cli::{FigureArgs, FigureId, Format};
use crate::output::{CliError, Result, Table};
use lattice_solver::ModelParams;
use observables::{
    find_peaks, spectrum_finite_time, spectrum_infinite_time, survival_curve, SpectrumSlice,
};
use std::path::Path;

pub fn run(a: FigureArgs) -> Result<()> {
    std::fs::create_dir_all(&a.out_dir)?;
    match a.id {
        FigureId::Fig1 => fig1(&a.out_dir),
        FigureId::Fig2 => fig2(&a.out_dir),
        FigureId::Fig3 => fig3(&a.out_dir),
        FigureId::Fig4 => fig4(&a.out_dir),
        FigureId::Fig5 => fig5(&a.out_dir),
        FigureId::Fig6 => fig6(&a.out_dir),
    }
}

fn params(alpha: f64, omega: f64) -> Result<ModelParams> {
    ModelParams::new(alpha, omega).map_err(|e| CliError::Config(e.to_string()))
}

fn write_spectrum(dir: &Path, name: &str, fig: &str, slice: &SpectrumSlice) -> Result<()> {
    let command = format!("deltaion reproduce-figure --id {fig}");
    let mut table = Table::new(command, vec!["k", "re_theta_big", "im_theta_big", "abs2"]);
    table.meta("alpha", slice.params.alpha);
    table.meta("omega", slice.params.omega);
    table.meta(
        "t",
        match slice.t {
            observables::TimeSpec::Finite(t) => t.to_string(),
            observables::TimeSpec::Infinite => "inf".to_string(),
        },
    );
    for (k, amp) in slice.k_grid.iter().zip(&slice.amplitude) {
        table.rows.push(vec![*k, amp.re, amp.im, amp.norm_sqr()]);
    }
    table.emit(Some(&dir.join(name)), Format::Csv)
}

fn write_script(dir: &Path, name: &str, body: &str) -> Result<()> {
    let preamble = "set datafile separator ','\nset key autotitle columnhead\n";
    std::fs::write(dir.join(name), format!("{preamble}{body}"))?;
    Ok(())
}

/// |Theta(k, inf)| around the dominant (3-photon) peak at alpha = 0.01,
/// omega = 0.4; the peak is located first so the window tracks the
/// O(alpha^2) Stark shift.
fn fig1(dir: &Path) -> Result<()> {
    let p = params(0.01, 0.4)?;
    let coarse: Vec<f64> = (0..24).map(|i| 0.05 + 0.05 * i as f64).collect();
    let table = find_peaks(&spectrum_infinite_time(&p, &coarse)?)?;
    let peak = table
        .peaks
        .iter()
        .max_by(|a, b| a.height.total_cmp(&b.height))
        .ok_or_else(|| CliError::Compute("no peak found for fig1".into()))?;
    let (u0, w) = (peak.k2_center, peak.width);
    let ks: Vec<f64> = (0..=400)
        .map(|i| (u0 + w * (-6.0 + 12.0 * i as f64 / 400.0)).sqrt())
        .collect();
    let slice = spectrum_infinite_time(&p, &ks)?;
    write_spectrum(dir, "fig1.csv", "fig1", &slice)?;
    write_script(
        dir,
        "fig1.gp",
        &format!(
            "set xlabel 'k^2 - {u0:.12}'\nset ylabel '|Theta(k,inf)|'\n\
             plot 'fig1.csv' using ($1*$1 - {u0:.12}):(sqrt($4)) \
             with lines title 'alpha=0.01, omega=0.4'\n"
        ),
    )
}

/// Log plot of |Theta(k, inf)| at alpha = 1, omega = 0.51: the multiphoton
/// peak series at k^2 near n*omega - 1.
fn fig2(dir: &Path) -> Result<()> {
    let p = params(1.0, 0.51)?;
    let ks: Vec<f64> = (1..=1100).map(|i| 0.002 * i as f64).collect();
    let slice = spectrum_infinite_time(&p, &ks)?;
    write_spectrum(dir, "fig2.csv", "fig2", &slice)?;
    write_script(
        dir,
        "fig2.gp",
        "set logscale y\nset xlabel 'k'\nset ylabel '|Theta(k,inf)|'\n\
         plot 'fig2.csv' using 1:(sqrt($4)) with lines title 'alpha=1, omega=0.51'\n",
    )
}

/// Log plots of |Theta(k, inf)| for omega = 0.4 at alpha = 1/2, 1, 2.
fn fig3(dir: &Path) -> Result<()> {
    let ks: Vec<f64> = (1..=1250).map(|i| 0.002 * i as f64).collect();
    let mut plots = Vec::new();
    for (alpha, tag) in [(0.5, "0.5"), (1.0, "1"), (2.0, "2")] {
        let p = params(alpha, 0.4)?;
        let slice = spectrum_infinite_time(&p, &ks)?;
        let name = format!("fig3_alpha{tag}.csv");
        write_spectrum(dir, &name, "fig3", &slice)?;
        plots.push(format!("'{name}' using 1:(sqrt($4)) with lines title 'alpha={tag}'"));
    }
    write_script(
        dir,
        "fig3.gp",
        &format!(
            "set logscale y\nset xlabel 'k'\nset ylabel '|Theta(k,inf)|'\n\
             plot {}\n",
            plots.join(", \\\n     ")
        ),
    )
}

/// |Theta(k, t)|^2 at t = 5T, 10T, infinity for alpha = 0.5, omega = 1.51.
fn fig4(dir: &Path) -> Result<()> {
    let p = params(0.5, 1.51)?;
    let ks: Vec<f64> = (1..=1000).map(|i| 0.002 * i as f64).collect();
    let period = p.period();
    let mut plots = Vec::new();
    for (t, tag, title) in [
        (Some(5.0 * period), "5t", "t = 5T"),
        (Some(10.0 * period), "10t", "t = 10T"),
        (None, "inf", "t = inf"),
    ] {
        let slice = match t {
            Some(t) => spectrum_finite_time(&p, &ks, t)?,
            None => spectrum_infinite_time(&p, &ks)?,
        };
        let name = format!("fig4_{tag}.csv");
        write_spectrum(dir, &name, "fig4", &slice)?;
        plots.push(format!("'{name}' using 1:4 with lines title '{title}'"));
    }
    write_script(
        dir,
        "fig4.gp",
        &format!(
            "set xlabel 'k'\nset ylabel '|Theta(k,t)|^2'\nplot {}\n",
            plots.join(", \\\n     ")
        ),
    )
}

/// log |theta(t)|^2 at omega = 1.51 for alpha = 0.5, 0.98, 1.3: exponential
/// decay with non-monotone rate (stabilization).
fn fig5(dir: &Path) -> Result<()> {
    let ts: Vec<f64> = (0..=600).map(|i| 0.1 * i as f64).collect();
    let mut plots = Vec::new();
    for tag in ["0.5", "0.98", "1.3"] {
        let p = params(tag.parse().unwrap(), 1.51)?;
        let curve = survival_curve(&p, &ts)?;
        let name = format!("fig5_alpha{tag}.csv");
        let command = "deltaion reproduce-figure --id fig5".to_string();
        let mut table = Table::new(command, vec!["t", "re_theta", "im_theta", "abs2"]);
        table.meta("alpha", p.alpha);
        table.meta("omega", p.omega);
        for (t, th) in curve.t_grid.iter().zip(&curve.theta) {
            table.rows.push(vec![*t, th.re, th.im, th.norm_sqr()]);
        }
        table.emit(Some(&dir.join(&name)), Format::Csv)?;
        plots.push(format!("'{name}' using 1:4 with lines title 'alpha={tag}'"));
    }
    write_script(
        dir,
        "fig5.gp",
        &format!(
            "set logscale y\nset xlabel 't'\nset ylabel '|theta(t)|^2'\nplot {}\n",
            plots.join(", \\\n     ")
        ),
    )
}

/// |psi(x, t)|^2 slices at omega = 1.52, alpha = 1.5: the outgoing
/// multiphoton wave trains along x = 2 sqrt(n*omega - 1) t.
fn fig6(dir: &Path) -> Result<()> {
    let p = params(1.5, 1.52)?;
    let field = wavefunction::LaplaceField::new(p);
    let xs: Vec<f64> = (0..=480).map(|i| 0.25 * i as f64).collect();
    let mut plots = Vec::new();
    for t in (1..=8).map(|j| 4.0 * j as f64 - 2.0) {
        let slice = wavefunction::invert_moderate(&field, t, &xs)?;
        let name = format!("fig6_t{t:02.0}.csv");
        let command = "deltaion reproduce-figure --id fig6".to_string();
        let mut table = Table::new(command, vec!["x", "re_psi", "im_psi", "abs2"]);
        table.meta("alpha", p.alpha);
        table.meta("omega", p.omega);
        table.meta("t", t);
        for (x, psi) in slice.x_grid.iter().zip(&slice.psi) {
            table.rows.push(vec![*x, psi.re, psi.im, psi.norm_sqr()]);
        }
        table.emit(Some(&dir.join(&name)), Format::Csv)?;
        plots.push(format!("'{name}' using 1:4 with lines title 't = {t}'"));
    }
    write_script(
        dir,
        "fig6.gp",
        &format!(
            "set xlabel 'x'\nset ylabel '|psi(x,t)|^2'\nset logscale y\nplot {}\n",
            plots.join(", \\\n     ")
        ),
    )
}
