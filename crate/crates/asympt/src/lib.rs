//! Asymptotic expansions of `E[phi(U_x)]` for convolution families.
//!
//! `U_x` ranges over a family of nonnegative random variables whose mgf
//! has the form `E e^{sU_x} = e^{x g(s)}` (Poisson, binomial, negative
//! binomial, gamma, or any i.i.d.-sum family indexed by its mean). For a
//! smooth `phi` with derivative growth controlled by an envelope `G(x)`,
//!
//! ```text
//! E[phi(U_x)] = phi(x) + sum_{n=2}^{2M-2} mu_n(x) phi^(n)(x) / n! + O(G(x) x^-M)
//! ```
//!
//! where the central moments `mu_n(x)` are polynomials in `x` computed
//! exactly (arbitrary-precision rationals) from the cumulants of `g`.
//! Expansions can be evaluated, collected into descending powers of `x`,
//! rendered as text/LaTeX/JSON, and verified against independent
//! brute-force expectation oracles.
//!
//! ```
//! use asympt::{Expansion, FamilySpec, PhiSpec, Rational, Scalar};
//!
//! // E[sqrt(K)] for K ~ Poisson(x), to three orders:
//! let sqrt = PhiSpec::power_shift(Scalar::Exact(Rational::new(-1, 2)), Scalar::zero())?;
//! let e = Expansion::build(FamilySpec::poisson(), sqrt, 3)?;
//! assert_eq!(
//!     e.collect_powers()?.to_text(),
//!     "x^(1/2) * (1 - 1/8 * x^-1 - 7/128 * x^-2)"
//! );
//! # Ok::<(), asympt::Error>(())
//! ```

// Negated float comparisons (`!(x > 0.0)`) are deliberate NaN-rejecting
// validation; index-based loops mirror the textbook recurrences they
// implement; reference constants keep their full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::excessive_precision)]
#![allow(clippy::manual_is_multiple_of)]

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod expansion;
pub mod families;
pub mod oracle;
pub mod phicat;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{RatPoly, RatSeries, Rational};
pub use expansion::{CollectedSeries, Expansion, ExpansionTerm};
pub use families::{bkn_poisson, CoeffTable, FamilySpec};
pub use oracle::{OracleLimits, OracleMethod, OracleResult};
pub use phicat::{DerivTerm, PhiSpec};
pub use scalar::Scalar;
