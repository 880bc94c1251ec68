//! Assembly of the asymptotic expansion
//!
//! ```text
//! S_M(x) = phi(x) + sum_{n=2}^{2M-2} mu_n(x) * phi^(n)(x) / n!
//! ```
//!
//! in raw-term form, plus collection into descending powers of `x` when
//! `phi` is a pure power or `x log x`. The remainder is `O(G(x) x^-M)`.

mod render;

pub use render::{from_json, to_json};

use crate::error::{Error, Result};
use crate::exactmath::{RatPoly, Rational};
use crate::families::FamilySpec;
use crate::phicat::{DerivTerm, PhiSpec};
use crate::scalar::Scalar;

/// One summand `mu_n(x) * phi^(n)(x) / n!`; `deriv` describes `phi^(n)`
/// (the `1/n!` is applied at evaluation and collection time).
#[derive(Clone, PartialEq, Debug)]
pub struct ExpansionTerm {
    pub n: usize,
    pub mu: RatPoly,
    pub deriv: DerivTerm,
}

impl ExpansionTerm {
    /// The scalar in front of `x^j (x+shift)^exponent` once `1/n!` is
    /// folded in: coefficient of `x^j` in `mu_n` times `deriv.coeff / n!`.
    pub fn piece_coeff(&self, j: usize) -> Scalar {
        self.deriv
            .coeff
            .mul_rational(&self.mu.coeff(j))
            .mul_rational(&Rational::factorial(self.n).recip().expect("n! != 0"))
    }
}

/// The truncated expansion for one `(family, phi, M)` triple.
///
/// `terms` covers `n = 2 ..= 2M-2` in ascending order (empty for `M = 1`);
/// the leading `phi(x)` is implicit.
#[derive(Clone, PartialEq, Debug)]
pub struct Expansion {
    pub family: FamilySpec,
    pub phi: PhiSpec,
    pub m: usize,
    pub terms: Vec<ExpansionTerm>,
}

impl Expansion {
    pub fn build(family: FamilySpec, phi: PhiSpec, m: usize) -> Result<Expansion> {
        if m < 1 {
            return Err(Error::Parameter("M must be at least 1".into()));
        }
        let nmax = 2 * m - 2;
        let mut terms = Vec::new();
        if nmax >= 2 {
            let mus = family.central_moments(nmax)?;
            for (n, mu) in mus.into_iter().enumerate().skip(2) {
                terms.push(ExpansionTerm {
                    n,
                    mu,
                    deriv: phi.derivative_term(n)?,
                });
            }
        }
        Ok(Expansion {
            family,
            phi,
            m,
            terms,
        })
    }

    /// Numeric value of `S_M(x)`. Each `mu_n` is evaluated exactly at the
    /// dyadic rational `x` and rounded once.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!(
                "expansion is evaluated for x > 0, got {x}"
            )));
        }
        let mut total = self.phi.value(x)?;
        for term in &self.terms {
            let mu = term.mu.eval_f64(x)?;
            let coeff = term
                .deriv
                .coeff
                .mul_rational(&Rational::factorial(term.n).recip().expect("n! != 0"))
                .to_f64();
            let power = (x + term.deriv.shift.to_f64()).powf(term.deriv.exponent.to_f64());
            total += mu * coeff * power;
        }
        Ok(total)
    }

    /// Collects the expansion into powers of `x`.
    ///
    /// Only supported when every term is a pure power of `x`: `phi` is a
    /// power with zero shift, or `x log x` (whose higher derivatives are
    /// pure powers). Exponents at or below `(leading exponent of G) - M`
    /// lie inside the `O(G(x) x^-M)` remainder and are dropped.
    pub fn collect_powers(&self) -> Result<CollectedSeries> {
        let (base_exponent, has_xlogx) = match &self.phi {
            PhiSpec::PowerShift { r, a } => {
                if !a.is_zero() {
                    return Err(Error::Unsupported(
                        "collection requires a zero shift; raw-term rendering covers a > 0".into(),
                    ));
                }
                (r.neg(), false)
            }
            PhiSpec::XLogX => (Scalar::zero(), true),
            PhiSpec::LogShift { .. } => {
                return Err(Error::Unsupported(
                    "log(x+beta) does not collect into powers of x".into(),
                ))
            }
        };

        let mut offsets: Vec<i64> = Vec::new();
        let mut coeffs: Vec<Scalar> = Vec::new();
        let mut add = |offset: i64, value: Scalar| match offsets.binary_search_by(|o| offset.cmp(o))
        {
            Ok(idx) => coeffs[idx] = coeffs[idx].add(&value),
            Err(idx) => {
                offsets.insert(idx, offset);
                coeffs.insert(idx, value);
            }
        };

        if !has_xlogx {
            add(0, Scalar::one());
        }
        for term in &self.terms {
            for (j, mu_coeff) in term.mu.coeffs().iter().enumerate() {
                if mu_coeff.is_zero() {
                    continue;
                }
                let rel = j as i64 - term.n as i64;
                if rel <= -(self.m as i64) {
                    continue; // inside the O(G(x) x^-M) remainder
                }
                // piece exponent: -r + rel for powers, rel + 1 for x log x
                // (phi^(n) of x log x is a multiple of x^(1-n))
                let offset = if has_xlogx { rel + 1 } else { rel };
                add(offset, term.piece_coeff(j));
            }
        }

        let terms = offsets.into_iter().zip(coeffs).collect();
        Ok(CollectedSeries {
            base_exponent,
            has_xlogx,
            m: self.m,
            terms,
        })
    }
}

/// An expansion regrouped by powers of `x`: coefficients at exponents
/// `base_exponent + offset` for integer offsets `0, -1, -2, ...` above
/// the remainder cutoff, plus an optional leading `x log x` (coefficient
/// one) for the `x log x` catalog member.
#[derive(Clone, PartialEq, Debug)]
pub struct CollectedSeries {
    base_exponent: Scalar,
    has_xlogx: bool,
    m: usize,
    /// `(offset, coefficient)`, offsets strictly descending from 0.
    terms: Vec<(i64, Scalar)>,
}

impl CollectedSeries {
    pub fn base_exponent(&self) -> &Scalar {
        &self.base_exponent
    }

    pub fn has_xlogx(&self) -> bool {
        self.has_xlogx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(offset, coefficient)` pairs, exponents descending.
    pub fn terms(&self) -> &[(i64, Scalar)] {
        &self.terms
    }

    /// Coefficient at `base_exponent + offset` (zero if absent).
    pub fn coefficient(&self, offset: i64) -> Scalar {
        self.terms
            .iter()
            .find(|(o, _)| *o == offset)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Actual exponent of the term at `offset`.
    pub fn exponent(&self, offset: i64) -> Scalar {
        self.base_exponent.add(&Scalar::from_int(offset))
    }

    /// Granularity of the exponent lattice: `1/denominator(base)` when
    /// exact (so `1/2` for half-integer powers), `1` otherwise.
    pub fn exponent_step(&self) -> Scalar {
        match &self.base_exponent {
            Scalar::Exact(r) => Scalar::Exact(
                Rational::from(r.denom().clone())
                    .recip()
                    .expect("denom > 0"),
            ),
            Scalar::Real(_) => Scalar::Real(1.0),
        }
    }

    /// True when every stored coefficient (and the base exponent) is exact.
    pub fn is_exact(&self) -> bool {
        self.base_exponent.is_exact() && self.terms.iter().all(|(_, c)| c.is_exact())
    }

    /// Numeric value of the collected form at `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut total = if self.has_xlogx { x * x.ln() } else { 0.0 };
        let base = self.base_exponent.to_f64();
        for (offset, coeff) in &self.terms {
            total += coeff.to_f64() * x.powf(base + *offset as f64);
        }
        total
    }
}
