use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point index {index} out of range for instance of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid radius {0}: must be finite and nonnegative")]
    InvalidRadius(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("subset {0} is empty, no finite covering radius")]
    EmptySubset(usize),

    #[error("invalid planar orthogonal graph: {0}")]
    InvalidPlanarGraph(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("gadget assignment failed: {0}")]
    GadgetAssignment(String),

    #[error("exact search budget exhausted")]
    BudgetExhausted,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
