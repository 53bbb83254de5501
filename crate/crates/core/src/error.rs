//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by graph construction, cost evaluation and mission runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate edge: endpoints ({x:.6}, {y:.6}) coincide")]
    DegenerateEdge { x: f64, y: f64 },

    #[error("unsupported wind class count {0} (expected 4 or 8)")]
    UnsupportedClassCount(u32),

    #[error("payload {payload} kg exceeds maximum {max} kg")]
    PayloadExceeded { payload: f64, max: f64 },

    #[error(
        "induced-velocity solve did not converge (thrust {thrust:.3} N, speed {speed:.3} m/s)"
    )]
    SolverDiverged { thrust: f64, speed: f64 },

    #[error("wind trace has no assignment for region `{region}` at slot {slot}")]
    MissingRegion { region: String, slot: u32 },

    #[error("edge sequence is not connected at step {step}")]
    DisconnectedPath { step: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("graph generation failed: {0}")]
    Generation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error at line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("oracle search exceeded the state budget ({0} states)")]
    OracleResource(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
