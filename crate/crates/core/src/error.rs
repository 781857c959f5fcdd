use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index pair fell outside a precomputed table.
    #[error("index out of range: {0}")]
    Range(String),

    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A request violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The zeta function was requested at its pole.
    #[error("pole: zeta(s) is undefined at s = 1")]
    Pole,

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("unknown formula `{0}`")]
    UnknownFormula(String),

    /// The operation is not available for the given formula or argument type.
    #[error("unsupported: {0}")]
    Capability(String),

    /// A precomputed table is too small for the requested truncation order.
    #[error("capacity exceeded: need order {needed}, table holds {available}")]
    Capacity { needed: usize, available: usize },

    #[error("quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: String, b: String },

    #[error("cannot parse number `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
