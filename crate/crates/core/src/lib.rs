pub mod catalog;
pub mod combinatorics;
pub mod constants;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod real;
pub mod special;

pub use error::{Error, Result};
pub use real::{BigReal, ComplexRational, ComplexReal, ExactRational};
