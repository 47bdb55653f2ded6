use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partition {partition} does not fit the {k}x{width} box")]
    OutsideBox {
        partition: String,
        k: usize,
        width: usize,
    },
    #[error("operands live in different Grassmannian contexts")]
    ContextMismatch,
    #[error("operation requires a concrete (box-truncated) context")]
    NotConcrete,
    #[error("series has constant term {0}, expected {1}")]
    BadConstantTerm(String, &'static str),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// Wedge actions of basis vectors `a` and `b` fail to anticommute on
    /// `H^j(Ω^i)`. Indices are zero-based.
    #[error("wedge actions of v_{} and v_{} do not anticommute on H^{j}(Ω^{i})", a + 1, b + 1)]
    Anticommutation {
        a: usize,
        b: usize,
        i: usize,
        j: usize,
    },
    #[error("invalid input data: {0}")]
    Data(String),
    #[error("internal consistency failure: {0}")]
    Computation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
