use thiserror::Error;

use crate::semiring::Semiring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions must be at least 1x1, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },

    #[error("data length {len} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, len: usize },

    #[error("entry ({row}, {col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: Semiring, right: Semiring },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("negative cycle detected through vertices {vertices:?}")]
    NegativeCycleDetected { vertices: Vec<usize> },

    #[error("positive cycle detected through vertices {vertices:?}")]
    PositiveCycleDetected { vertices: Vec<usize> },

    #[error("graph has no cycle")]
    NoCycle,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        last: Vec<f64>,
    },

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("task {id} out of range for {n} tasks")]
    InvalidTask { id: usize, n: usize },

    #[error("{what} must be a non-negative finite time, got {value}")]
    InvalidTime { what: &'static str, value: i64 },

    #[error("precedence constraints contain a cycle through tasks {tasks:?}")]
    CycleInAcyclicGraph { tasks: Vec<usize> },

    #[error("feedback edges require a cyclic task graph")]
    FeedbackOnAcyclicGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown semiring `{0}` (expected maxplus, minplus, maxmin, minmax or boolean)")]
    UnknownSemiring(String),

    #[error("invalid value `{0}` (expected a finite 32-bit integer, inf or -inf)")]
    InvalidValue(String),
}
