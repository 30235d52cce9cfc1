use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// ζ(x) = 0: the point is local and the caller must take the local branch.
    #[error("x = {x} is a local point (zero horizon)")]
    LocalPoint { x: f64 },

    #[error("reference kernel is not normalized: first moment {m1} (expected 1 within 1e-10)")]
    KernelNotNormalized { m1: f64 },

    #[error("reference kernel is negative at y = {y}")]
    KernelNegative { y: f64 },

    #[error("reference kernel moment {name} is not finite and positive ({value})")]
    KernelMoment { name: &'static str, value: f64 },

    #[error("invalid descriptor `{0}`")]
    InvalidDescriptor(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("x = {x} is not on the grid (distance {offset:e} to the nearest node, spacing {h})")]
    Misaligned { x: f64, offset: f64, h: f64 },

    #[error("node {index} is outside the grid (0..{n_nodes})")]
    NodeOutOfRange { index: usize, n_nodes: usize },

    #[error("node {index} is not interior; a three-point quotient needs both neighbours")]
    NotInterior { index: usize },

    #[error("time step {tau} is unstable: tau * max diagonal = {product} > 1")]
    Unstable { tau: f64, product: f64 },

    #[error("non-finite value at node {node} after step {step}")]
    NonFinite { step: usize, node: usize },

    #[error("x = {x} is a horizon breakpoint; use the general derivative-jump evaluator")]
    HorizonBreakpoint { x: f64 },

    #[error("initial data has no value jumps to track")]
    NoValueJumps,

    #[error("snapshot times must be strictly increasing ({previous} then {next})")]
    SnapshotOrder { previous: f64, next: f64 },

    #[error("snapshot length {got} does not match the grid ({expected} nodes)")]
    SnapshotLength { got: usize, expected: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid scenario:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
