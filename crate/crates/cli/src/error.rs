use cdyn_core::bifurcation::BifError;
use cdyn_core::green::GreenError;
use cdyn_core::periodic::PeriodicError;
use cdyn_core::probes::ProbeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A config problem tied to a key (and a line when the key was present).
    #[error("{}{key}: {msg}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Config { line: Option<usize>, key: String, msg: String },
    #[error("config: {0}")]
    Syntax(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Syntax(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<PeriodicError> for CliError {
    fn from(e: PeriodicError) -> Self {
        match e {
            PeriodicError::CapExceeded { .. } | PeriodicError::PeriodCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<BifError> for CliError {
    fn from(e: BifError) -> Self {
        match e {
            BifError::OrbitCap(_) => CliError::Cap(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<GreenError> for CliError {
    fn from(e: GreenError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<ProbeError> for CliError {
    fn from(e: ProbeError) -> Self {
        match e {
            ProbeError::Periodic(p) => p.into(),
            ProbeError::Bifurcation(b) => b.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
