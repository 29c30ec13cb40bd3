//! Exact coefficients, monomials, sparse polynomials and the input grammar.

pub mod coefficient;
pub mod differences;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use coefficient::{Coefficient, Field};
pub use linalg::Matrix;
pub use monomial::{compare_monomials, ExponentVector, MonomialOrder, OrderKind};
pub use parse::{infer_variables, parse_polynomial, parse_polynomial_list, ParseOptions};
pub use polynomial::{poly_arith, ArithOp, Polynomial, Ring};

/// Largest number of ambient variables accepted from user input.
pub const MAX_AMBIENT_VARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("modulus {0} is not a prime in the supported range")]
    NonPrimeModulus(u64),
    #[error("unknown coefficient field `{0}` (expected `q` or `fp:P`)")]
    UnknownField(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable permutation is not a bijection")]
    InvalidPermutation,
    #[error("operands live in different polynomial rings")]
    AmbientMismatch,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("too many ambient variables: {0} (at most {MAX_AMBIENT_VARS})")]
    TooManyVariables(usize),
}
