//! Exact scalar, Laurent-polynomial and truncated power-series arithmetic.
//!
//! Scalars are [`BigRational`]s from the `num` crate. The formal parameter
//! `q` lives in [`QPolynomial`]; the generating-function variable `x` only
//! exists inside [`PowerSeries`].

mod poly;
mod rational;
mod series;

pub use num::{BigInt, BigRational};
pub use poly::QPolynomial;
pub use rational::{format_rational, parse_rational, rational, rational_from_int};
pub use series::{series_sqrt_one_minus_4x, PowerSeries};
