//! The catalog of test functions `phi` with closed-form derivatives of
//! every order and a growth envelope `G(x)` bounding them.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A catalog function.
///
/// `PowerShift { r, a }` is `phi(x) = (x + a)^(-r)`; with `a = 0` it
/// follows the inverse-moment convention `phi(x) = x^(-r)` for `x >= 1`
/// and `phi(x) = 0` for `x < 1`, so discrete expectations simply skip
/// `k = 0`. `LogShift { beta }` is `log(x + beta)`. `XLogX` is
/// `x log(x)`, extended by continuity with `phi(0) = 0`.
#[derive(Clone, PartialEq, Debug)]
pub enum PhiSpec {
    PowerShift { r: Scalar, a: Scalar },
    LogShift { beta: Scalar },
    XLogX,
}

/// One power term `coeff * (x + shift)^exponent`, the shape of every
/// catalog derivative (except the first derivative of `x log x`).
#[derive(Clone, PartialEq, Debug)]
pub struct DerivTerm {
    pub coeff: Scalar,
    pub shift: Scalar,
    pub exponent: Scalar,
}

impl DerivTerm {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeff.to_f64() * (x + self.shift.to_f64()).powf(self.exponent.to_f64())
    }
}

impl fmt::Display for DerivTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_zero() {
            write!(f, "{} * x^({})", self.coeff, self.exponent)
        } else {
            write!(f, "{} * (x+{})^({})", self.coeff, self.shift, self.exponent)
        }
    }
}

impl PhiSpec {
    /// `(x + a)^(-r)` with `a >= 0`.
    pub fn power_shift(r: Scalar, a: Scalar) -> Result<Self> {
        if a.to_f64() < 0.0 || !a.to_f64().is_finite() {
            return Err(Error::Parameter(format!("shift a must be >= 0, got {a}")));
        }
        if !r.to_f64().is_finite() {
            return Err(Error::Parameter(format!(
                "exponent r must be finite, got {r}"
            )));
        }
        Ok(PhiSpec::PowerShift { r, a })
    }

    /// `log(x + beta)` with `beta > 0`.
    pub fn log_shift(beta: Scalar) -> Result<Self> {
        if beta.to_f64() <= 0.0 || !beta.to_f64().is_finite() {
            return Err(Error::Parameter(format!("beta must be > 0, got {beta}")));
        }
        Ok(PhiSpec::LogShift { beta })
    }

    pub fn x_log_x() -> Self {
        PhiSpec::XLogX
    }

    /// The additive shift inside the base: `a`, `beta`, or zero.
    pub fn shift(&self) -> Scalar {
        match self {
            PhiSpec::PowerShift { a, .. } => a.clone(),
            PhiSpec::LogShift { beta } => beta.clone(),
            PhiSpec::XLogX => Scalar::zero(),
        }
    }

    /// `phi(x)`.
    pub fn value(&self, x: f64) -> Result<f64> {
        match self {
            PhiSpec::PowerShift { r, a } => {
                let av = a.to_f64();
                if av == 0.0 && x < 1.0 {
                    // inverse-moment convention: zero below 1
                    return Ok(0.0);
                }
                if x + av <= 0.0 {
                    return Err(Error::Domain(format!("(x+a) must be positive, got x={x}")));
                }
                Ok((x + av).powf(-r.to_f64()))
            }
            PhiSpec::LogShift { beta } => {
                let b = beta.to_f64();
                if x + b <= 0.0 {
                    return Err(Error::Domain(format!(
                        "(x+beta) must be positive, got x={x}"
                    )));
                }
                Ok((x + b).ln())
            }
            PhiSpec::XLogX => {
                if x < 0.0 {
                    return Err(Error::Domain(format!("x log x needs x >= 0, got x={x}")));
                }
                if x == 0.0 {
                    return Ok(0.0);
                }
                Ok(x * x.ln())
            }
        }
    }

    /// `phi^(n)(x)` for `n >= 1`, `x > 0`, from the closed forms.
    pub fn derivative(&self, n: usize, x: f64) -> Result<f64> {
        assert!(n >= 1, "derivative order must be >= 1");
        if x <= 0.0 {
            return Err(Error::Domain(format!(
                "derivatives are only evaluated for x > 0, got x={x}"
            )));
        }
        match self {
            PhiSpec::XLogX if n == 1 => Ok(x.ln() + 1.0),
            _ => Ok(self.derivative_term(n)?.eval(x)),
        }
    }

    /// Symbolic descriptor of `phi^(n)` as a single power term, exact
    /// whenever the parameters are.
    ///
    /// * `PowerShift`: `(-1)^n r(r+1)...(r+n-1) (x+a)^(-r-n)`
    /// * `LogShift`: `(-1)^(n-1) (n-1)! (x+beta)^(-n)`
    /// * `XLogX`, `n >= 2`: `(-1)^n (n-2)! x^(1-n)`
    ///
    /// The first derivative of `x log x` is `log(x) + 1`, which is not a
    /// power term; requesting it is an error. Expansion terms start at
    /// `n = 2`, so this never arises there.
    pub fn derivative_term(&self, n: usize) -> Result<DerivTerm> {
        assert!(n >= 1, "derivative order must be >= 1");
        match self {
            PhiSpec::PowerShift { r, a } => {
                // rising factorial r (r+1) ... (r+n-1)
                let mut coeff = Scalar::one();
                for i in 0..n {
                    coeff = coeff.mul(&r.add(&Scalar::from_int(i as i64)));
                }
                if n % 2 == 1 {
                    coeff = coeff.neg();
                }
                Ok(DerivTerm {
                    coeff,
                    shift: a.clone(),
                    exponent: r.neg().sub(&Scalar::from_int(n as i64)),
                })
            }
            PhiSpec::LogShift { beta } => {
                let mut coeff = Scalar::Exact(crate::Rational::factorial(n - 1));
                if n % 2 == 0 {
                    coeff = coeff.neg();
                }
                Ok(DerivTerm {
                    coeff,
                    shift: beta.clone(),
                    exponent: Scalar::from_int(-(n as i64)),
                })
            }
            PhiSpec::XLogX => {
                if n == 1 {
                    return Err(Error::Unsupported(
                        "d/dx (x log x) = log x + 1 is not a power term".into(),
                    ));
                }
                let mut coeff = Scalar::Exact(crate::Rational::factorial(n - 2));
                if n % 2 == 1 {
                    coeff = coeff.neg();
                }
                Ok(DerivTerm {
                    coeff,
                    shift: Scalar::zero(),
                    exponent: Scalar::from_int(1 - n as i64),
                })
            }
        }
    }

    /// Growth envelope `G(x)` with `|phi^(m)(x)/m!| <= G(x) (A/x)^m`.
    pub fn growth_envelope(&self, x: f64) -> f64 {
        match self {
            PhiSpec::PowerShift { r, a } => (x + a.to_f64()).powf(-r.to_f64()),
            PhiSpec::LogShift { .. } => 1.0,
            PhiSpec::XLogX => x * x.ln(),
        }
    }

    /// A degree `d` with `|phi(j)| <= |phi(k)| (j/k)^d` for `j >= k >= 3`,
    /// used by the oracles' tail majorants. `log(j+b)/log(k+b) <= j/k`
    /// and `(j log j)/(k log k) <= (j/k)^2` on that range.
    pub fn tail_growth_degree(&self) -> f64 {
        match self {
            PhiSpec::PowerShift { r, .. } => (-r.to_f64()).max(0.0),
            PhiSpec::LogShift { .. } => 1.0,
            PhiSpec::XLogX => 2.0,
        }
    }

    /// True when all parameters are exact rationals.
    pub fn is_exact(&self) -> bool {
        match self {
            PhiSpec::PowerShift { r, a } => r.is_exact() && a.is_exact(),
            PhiSpec::LogShift { beta } => beta.is_exact(),
            PhiSpec::XLogX => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PhiSpec::PowerShift { .. } => "power",
            PhiSpec::LogShift { .. } => "log",
            PhiSpec::XLogX => "xlogx",
        }
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSpec::PowerShift { r, a } => write!(f, "power:r={r},a={a}"),
            PhiSpec::LogShift { beta } => write!(f, "log:beta={beta}"),
            PhiSpec::XLogX => write!(f, "xlogx"),
        }
    }
}
