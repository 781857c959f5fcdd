//! Exact combinatorial kernels.

pub mod bernoulli;
pub mod factorial;
pub mod polynomial;
pub mod stirling;

pub use bernoulli::{
    bernoulli_number, bernoulli_numbers, bernoulli_polynomial, euler_number, euler_numbers,
    euler_polynomial, PolynomialKind, PolynomialValues,
};
pub use factorial::{
    binomial_sequence, binomial_sequence_complex, double_factorial_odd, factorial,
    generalized_binomial, generalized_binomial_complex, generalized_binomial_complex_real,
    generalized_binomial_float, pochhammer, pochhammer_rational, RisingFactorial,
};
pub use polynomial::RationalPolynomial;
pub use stirling::{stirling_first, StirlingTable};
