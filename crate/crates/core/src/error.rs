use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("degenerate Markov chain: alpha + beta = 0 has no unique stationary distribution")]
    DegenerateChain,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid bit value {0}, expected 0 or 1")]
    InvalidBit(u8),
    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),
    #[error("rate {rate} is infeasible: average check degree {avg_check_degree} < 2")]
    InfeasibleRate { rate: f64, avg_check_degree: f64 },
    #[error("invalid Tanner graph: {0}")]
    InvalidGraph(String),
    #[error("PEG construction failed: {0}")]
    Construction(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("alist line {line}: {msg}")]
    Alist { line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
        if expected == actual {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, actual })
        }
    }
}
