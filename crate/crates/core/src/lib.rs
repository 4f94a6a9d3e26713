//! Exact computation of vacuum moments on the (q,2)-deformed Fock space.
//!
//! The crate has two independent routes to every moment:
//!
//! * [`fock`] applies creation and annihilation operators symbolically to
//!   tensor words, keeping `q` formal;
//! * [`moments`] sums `q^c(theta)` over an explicitly constructed set of pair
//!   partitions built from [`pairings`].
//!
//! [`sequences`] holds the integer sequences and generating-function checks
//! that tie the two together, and [`verify`] bundles everything into
//! reproducible suites.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod moments;
pub mod pairings;
pub mod sequences;
pub mod verify;

pub use algebra::{BigInt, BigRational, PowerSeries, QPolynomial};
pub use error::{Error, Result};
pub use pairings::{EpsilonClass, EpsilonSequence, PairPartition};
