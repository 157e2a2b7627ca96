use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration failed to converge within its budget.
    #[error("{func} did not converge: {details}")]
    NonConvergence { func: &'static str, details: String },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature failed on {context}: requested {requested:.3e}, achieved {achieved:.3e}")]
    Quadrature {
        context: String,
        requested: f64,
        achieved: f64,
    },

    /// A point pattern was empty where a serving point is required.
    #[error("empty point pattern: no serving base station in the simulation window")]
    EmptyPattern,

    /// An experiment spec failed validation before any computation ran.
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
