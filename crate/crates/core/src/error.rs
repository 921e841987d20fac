use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coin spinor is not normalized (|a0|^2 + |a1|^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("eigenvector normalization N_{j}({k}) = {norm:e} is degenerate")]
    DegenerateNormalization { k: f64, j: usize, norm: f64 },

    #[error("x = {x} lies outside the open support (xi(x) = {xi:e})")]
    OutOfSupport { x: f64, xi: f64 },

    #[error("law {law} cannot score the {variant} walk")]
    InconsistentLaw { law: String, variant: String },

    #[error("{0}")]
    Parse(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
