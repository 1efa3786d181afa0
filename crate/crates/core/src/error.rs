use std::path::PathBuf;

/// Errors produced by the control library and simulation harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation produced a non-finite value.
    #[error("numerical overflow in {stage}{}: {detail}", step.map(|k| format!(" at step {k}")).unwrap_or_default())]
    Overflow {
        stage: &'static str,
        step: Option<usize>,
        detail: String,
    },

    /// The scenario configuration is invalid.
    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn overflow(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Overflow {
            stage,
            step: None,
            detail: detail.into(),
        }
    }

    /// Attaches a step index to an overflow error; other variants pass through.
    pub fn at_step(self, k: usize) -> Self {
        match self {
            Error::Overflow { stage, detail, .. } => Error::Overflow {
                stage,
                step: Some(k),
                detail,
            },
            other => other,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) => 1,
            Error::Overflow { .. } => 2,
            Error::Io { .. } | Error::Csv { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns an overflow error naming the first non-finite component of `values`.
pub(crate) fn check_finite(stage: &'static str, names: &[&str], values: &[f64]) -> Result<()> {
    for (name, v) in names.iter().zip(values) {
        if !v.is_finite() {
            return Err(Error::overflow(stage, format!("{name} = {v}")));
        }
    }
    Ok(())
}
