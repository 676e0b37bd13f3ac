use crate::cli::Format;
use std::io::Write;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration (grids, flag values): exit 2
    Config(String),
    /// Solver or tolerance failure during computation: exit 1
    Compute(String),
    /// One or more validation checks failed: exit 1
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Compute(m) => write!(f, "{m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

macro_rules! from_compute {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        }
    )*};
}

from_compute!(
    observables::ObsError,
    wavefunction::WaveError,
    lattice_solver::SolverError,
    volterra_oracle::OracleError,
    serde_json::Error,
    std::io::Error
);

pub type Result<T> = std::result::Result<T, CliError>;

/// One dataset: `#`-prefixed metadata lines, named columns, numeric rows.
/// The metadata always leads with the reconstructed command line, so a file
/// documents the exact run that produced it.
pub struct Table {
    pub meta: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// 17 significant digits: exact round trip for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn new(command: String, columns: Vec<&'static str>) -> Self {
        let meta = vec![
            ("command", command),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
        ];
        Table { meta, columns, rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &'static str, value: impl ToString) {
        self.meta.push((key, value.to_string()));
    }

    fn check(&self) -> Result<()> {
        for row in &self.rows {
            if row.len() != self.columns.len() {
                return Err(CliError::Compute("ragged output table".into()));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(CliError::Compute(format!("non-finite output value {bad}")));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "meta": meta,
            "data": {
                "columns": self.columns,
                "rows": self.rows,
            },
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }

    pub fn emit(&self, path: Option<&Path>, format: Format) -> Result<()> {
        self.check()?;
        let mut buf = Vec::new();
        match format {
            Format::Csv => self.write_csv(&mut buf)?,
            Format::Json => self.write_json(&mut buf)?,
        }
        match path {
            Some(p) => std::fs::write(p, &buf)?,
            None => std::io::stdout().write_all(&buf)?,
        }
        Ok(())
    }
}
