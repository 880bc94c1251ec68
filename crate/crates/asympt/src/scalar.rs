//! Exact-or-real scalar values.
//!
//! Coefficients stay exact rationals whenever the inputs allow it; a
//! single real-valued parameter (like an irrational exponent `r`)
//! contaminates everything it touches into floats. `Scalar` carries that
//! distinction through the expansion pipeline.

use std::fmt;

use crate::exactmath::Rational;

#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(Rational),
    Real(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(Rational::from(v))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Real(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Real(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Real(v) => *v == 0.0,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Real(v) => Scalar::Real(-v),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Real(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Real(self.to_f64() * other.to_f64()),
        }
    }

    pub fn mul_rational(&self, other: &Rational) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * other),
            Scalar::Real(v) => Scalar::Real(v * other.to_f64()),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Real(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Real(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactness_propagation() {
        let a = Scalar::Exact(Rational::new(1, 2));
        let b = Scalar::Exact(Rational::new(1, 3));
        assert_eq!(a.mul(&b), Scalar::Exact(Rational::new(1, 6)));
        assert!(a.add(&b).is_exact());
        let r = Scalar::Real(0.5);
        assert!(!a.mul(&r).is_exact());
        assert_eq!(a.mul(&r).to_f64(), 0.25);
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::Exact(Rational::new(-7, 8)).to_string(), "-7/8");
        assert_eq!(Scalar::Real(0.5).to_string(), "0.5");
    }
}
