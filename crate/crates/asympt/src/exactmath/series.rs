//! Truncated power series with exact rational coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Power series in `s` truncated at a fixed order `N`: exactly the
/// coefficients of `s^0 ..= s^N`. Binary operations require matching
/// orders so a truncation level is never silently mixed.
#[derive(Clone, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<Rational>,
}

impl RatSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        RatSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant-one series of the given order.
    pub fn one(order: usize) -> Self {
        let mut s = RatSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The monomial `s` truncated at `order` (which must be >= 1).
    pub fn s(order: usize) -> Self {
        assert!(order >= 1, "order must admit an s term");
        let mut r = RatSeries::zero(order);
        r.coeffs[1] = Rational::one();
        r
    }

    /// Builds from coefficients of `s^0 ..= s^N`; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the s^0 term");
        RatSeries { coeffs }
    }

    /// `exp(s)` truncated at `order`: coefficients `1/j!`.
    pub fn exp_s(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| {
                Rational::factorial(j)
                    .recip()
                    .expect("factorial is nonzero")
            })
            .collect();
        RatSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `j`-th derivative at the origin: `j! * coeffs[j]`.
    pub fn derivative_at_zero(&self, j: usize) -> Rational {
        &Rational::factorial(j) * &self.coeff(j)
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Result<RatSeries> {
        if order > self.order() {
            return Err(Error::SeriesDomain(format!(
                "cannot extend a series of order {} to order {}",
                self.order(),
                order
            )));
        }
        Ok(RatSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_order(&self, other: &RatSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatSeries { coeffs })
    }

    pub fn sub(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RatSeries { coeffs })
    }

    /// Truncated Cauchy product at the common order.
    pub fn mul(&self, other: &RatSeries) -> Result<RatSeries> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Ok(RatSeries { coeffs })
    }

    pub fn scale(&self, factor: &Rational) -> RatSeries {
        RatSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Adds a constant to the `s^0` coefficient.
    pub fn add_constant(&self, c: &Rational) -> RatSeries {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + c;
        out
    }

    /// `exp(a(s))` for a series with zero constant term, by the recurrence
    /// `n*b_n = sum_{k=1..n} k * a_k * b_{n-k}`.
    pub fn exp(&self) -> Result<RatSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesDomain(format!(
                "exp requires a zero constant term, found {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &(&(&Rational::from(k as i64) * &self.coeffs[k]) * &out[m - k]);
            }
            out[m] = &acc / &Rational::from(m as i64);
        }
        Ok(RatSeries { coeffs: out })
    }

    /// `log(a(s))` for a series with constant term one, by the recurrence
    /// `b_n = a_n - (1/n) * sum_{k=1..n-1} k * b_k * a_{n-k}`.
    pub fn log(&self) -> Result<RatSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesDomain(format!(
                "log requires a unit constant term, found {}",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..m {
                if out[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc += &(&(&Rational::from(k as i64) * &out[k]) * &self.coeffs[m - k]);
            }
            out[m] = &self.coeffs[m] - &(&acc / &Rational::from(m as i64));
        }
        Ok(RatSeries { coeffs: out })
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(s^{})", self.order() + 1)
    }
}

impl fmt::Debug for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
