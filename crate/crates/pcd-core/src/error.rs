use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element {0} does not occur in the design")]
    UnknownElement(u64),

    #[error("triple {{{0}, {1}, {2}}} admits no prefix cover")]
    Uncoverable(u64, u64, u64),

    #[error("no valid padding element for sequence {sequence} at level {level}")]
    PadUnavailable { sequence: usize, level: usize },

    #[error("universe size {v} is not divisible by block count {d}")]
    IndivisibleUniverse { v: u64, d: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("design universe K={design_k} does not match hypergraph part count K={graph_k}")]
    KMismatch { design_k: u64, graph_k: u64 },

    #[error("instance would need about {estimate} objects, over the budget of {budget}")]
    AlphaOverflow { estimate: u128, budget: u128 },

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),

    #[error("model is inconsistent with the instance: {0}")]
    ModelInconsistent(String),

    #[error("design does not match the shape's fixed layout: {0}")]
    LayoutMismatch(String),

    #[error("CNF encoding would exceed the clause budget of {budget} (at least {emitted} needed)")]
    ShapeTooLarge { emitted: usize, budget: usize },

    #[error("no prefix covering design construction for d = {0}")]
    UnsupportedDimension(u64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("encoder bug: decoded model fails verification: {0}")]
    EncoderUnsound(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
