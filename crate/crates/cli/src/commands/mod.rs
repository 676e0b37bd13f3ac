mod figures;
mod resonance;
mod spectrum;
mod survival;
mod validate;
mod wavefn;

use crate::cli::{Command, ModelArgs};
use crate::output::{CliError, Result};
use lattice_solver::ModelParams;

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Spectrum(a) => spectrum::run(a),
        Command::Survival(a) => survival::run(a),
        Command::Wavefunction(a) => wavefn::run(a),
        Command::Resonance(a) => resonance::run(a),
        Command::Validate(a) => validate::run(a),
        Command::ReproduceFigure(a) => figures::run(a),
    }
}

pub(crate) fn model(args: &ModelArgs) -> Result<ModelParams> {
    ModelParams::new(args.alpha, args.omega).map_err(|e| CliError::Config(e.to_string()))
}

/// Uniform grid with strict validation: finite ordered endpoints, >= 2 points.
pub(crate) fn linspace(min: f64, max: f64, count: usize, name: &str) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() || min >= max {
        return Err(CliError::Config(format!(
            "{name} grid needs finite {name}-min < {name}-max; got [{min}, {max}]"
        )));
    }
    if count < 2 {
        return Err(CliError::Config(format!("{name}-count must be >= 2; got {count}")));
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count).map(|i| min + step * i as f64).collect())
}
