//! Exact arithmetic substrate: arbitrary-precision rationals, dense
//! univariate polynomials in the variable eta, reduced rational functions
//! and truncated formal power series.
//!
//! Every operation here is exact; nothing ever rounds. Floating point lives
//! in [`crate::analysis`] only.

mod poly;
mod rational;
mod ratfun;
mod series;

pub use poly::Poly;
pub use rational::{rat, rat_from_str, rat_sqrt, rat_to_string, Rat};
pub use ratfun::RationalFunction;
pub use series::{BiSeries, Series, SeriesCoeff};
