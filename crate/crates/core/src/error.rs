//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally malformed input (bad header, not UTF-8, wrong shape).
    #[error("format error: {0}")]
    Format(String),

    /// Well-formed input with invalid content (bad cell, gap in ticks, duplicate label).
    #[error("data error: {0}")]
    Data(String),

    /// A window was requested past the available history.
    #[error("insufficient history: window of depth {depth} at tick {anchor} needs ticks {from}..={to}")]
    InsufficientHistory {
        anchor: i64,
        depth: usize,
        from: i64,
        to: i64,
    },

    /// Window depth below the minimum of 3.
    #[error("invalid depth: k = {0}, minimum window depth is 3")]
    InvalidDepth(usize),

    /// Invalid configuration value.
    #[error("config error: {0}")]
    Config(String),

    /// Parameter index out of range.
    #[error("index {index} out of range for {n} parameters")]
    Index { index: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
