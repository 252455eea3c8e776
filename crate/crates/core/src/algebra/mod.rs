//! Exact rationals and sparse polynomials in `Q[t, x1, ..., xm]`.
//!
//! Slot 0 of every exponent vector is `t`; slot `i` is `x_i`. Algebraic
//! degree counts every variable once; the cohomological degree of a
//! homogeneous class is twice its algebraic degree.

mod linear;
mod monomial;
mod parse;
mod polynomial;
mod rational;

use thiserror::Error;

pub use linear::{linear_decompose, product_of_linear_forms, LinearForm};
pub use monomial::Monomial;
pub use polynomial::{poly_arith, ArithOp, Polynomial};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in different rings ({left} vs {right} x-variables)")]
    VarCountMismatch { left: usize, right: usize },
    #[error("point has {found} coordinates, ring has {expected} x-variables")]
    PointLengthMismatch { expected: usize, found: usize },
    #[error("polynomial does not vanish at the point: evaluates to {value}")]
    DoesNotVanish { value: String },
    #[error("not an exact rational: {0:?}")]
    BadRational(String),
    #[error("cannot parse polynomial {input:?} at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },
}
