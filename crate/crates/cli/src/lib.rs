//! Command-line layer: renders the library's sweeps and verification
//! suites as CSV or JSON tables with stable bytes for a fixed seed.

pub mod figures;
pub mod output;
pub mod simulate;
pub mod sweep;
pub mod verifycmd;

pub use figures::{cmd_fig2, cmd_fig3, cmd_fig4, cmd_fig5, Fig2Cfg, Fig3Cfg, Fig4Cfg, Fig5Cfg};
pub use output::{Axis, Cell, Format, Table};
pub use simulate::{cmd_simulate, SimulateCfg};
pub use sweep::{cmd_sweep, SweepSpec};
pub use verifycmd::cmd_verify;

use ansec::fading::FadingError;
use ansec::ModelError;

/// Process exit codes: 0 success, 1 usage or validation, 2 verification
/// failure, 3 numerical non-convergence.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NonConvergence(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::NonConvergence(what) => {
                write!(f, "quadrature did not converge while computing {what}")
            }
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub(crate) fn non_convergence(what: &str) -> impl FnOnce(FadingError) -> CliError + '_ {
    move |_| CliError::NonConvergence(what.to_string())
}

/// Rejects gains and variances that the closed forms cannot take.
pub(crate) fn check_nonneg(name: &str, value: f64) -> Result<f64, CliError> {
    if !value.is_finite() || value < 0.0 {
        return Err(CliError::Usage(format!(
            "{name} must be finite and non-negative, got {value}"
        )));
    }
    Ok(value)
}
