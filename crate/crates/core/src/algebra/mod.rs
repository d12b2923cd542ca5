//! Exact arithmetic over arbitrary-precision rationals: dense polynomials,
//! canonical rational functions, and truncated univariate / bivariate series.

mod poly;
mod ratfunc;
mod serial;
mod series;

use thiserror::Error;

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use serial::{RationalFunctionRepr, SerialError};
pub use series::{BivariateSeries, PowerSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator vanishes at x = 0")]
    PoleAtZero,
    #[error("square root needs constant term 1")]
    SqrtConstantTerm,
    #[error("series has a nonzero coefficient below the requested power")]
    NotDivisible,
    #[error("division would exhaust the truncation order")]
    TruncationExhausted,
}
