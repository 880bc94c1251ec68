//! Exact arbitrary-precision rationals, univariate polynomials, and
//! truncated power series. Everything downstream (moment polynomials,
//! coefficient tables, collected expansions) is computed on these types,
//! so no floating point enters until final evaluation.

mod poly;
mod rational;
mod series;

pub use poly::RatPoly;
pub use rational::Rational;
pub use series::RatSeries;
