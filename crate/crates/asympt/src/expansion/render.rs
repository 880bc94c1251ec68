//! Rendering of expansions and collected series as text, LaTeX, and JSON.
//!
//! Output is deterministic: the head `phi(x)` term first, then summands
//! by descending `n`, pieces within a summand by descending `k`
//! (ascending power of `x`). JSON keeps rationals as `["num", "den"]`
//! decimal-digit strings so exactness survives the wire.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{RatPoly, RatSeries, Rational};
use crate::families::FamilySpec;
use crate::phicat::PhiSpec;
use crate::scalar::Scalar;

use super::{CollectedSeries, Expansion};

// ---------------------------------------------------------------- text

fn scalar_text(s: &Scalar) -> String {
    s.to_string()
}

/// `x^(e)` or `(x+shift)^(e)`, eliding unit exponents.
fn power_text(shift: &Scalar, exponent: &Scalar) -> String {
    let base = if shift.is_zero() {
        "x".to_string()
    } else {
        format!("(x+{shift})")
    };
    match exponent {
        Scalar::Exact(r) if r.is_one() => base,
        _ => format!("{base}^({exponent})"),
    }
}

fn phi_head_text(phi: &PhiSpec) -> String {
    match phi {
        PhiSpec::PowerShift { r, a } => power_text(a, &r.neg()),
        PhiSpec::LogShift { beta } => format!("log(x+{beta})"),
        PhiSpec::XLogX => "x*log(x)".to_string(),
    }
}

/// Appends `sign coeff * rest` with the sign pulled out of the scalar.
fn push_signed(out: &mut String, coeff: &Scalar, rest: &str) {
    let (neg, mag) = match coeff {
        Scalar::Exact(r) => (r.is_negative(), Scalar::Exact(r.abs()).to_string()),
        Scalar::Real(v) => (*v < 0.0, v.abs().to_string()),
    };
    out.push_str(if neg { " - " } else { " + " });
    let is_unit = match coeff {
        Scalar::Exact(r) => r.abs().is_one(),
        Scalar::Real(v) => v.abs() == 1.0,
    };
    if is_unit {
        out.push_str(rest);
    } else {
        out.push_str(&mag);
        out.push_str(" * ");
        out.push_str(rest);
    }
}

impl Expansion {
    /// Flattened raw-term rendering, e.g.
    /// `log(x+1) - 1/4 * x * (x+1)^(-2) + ...`.
    pub fn to_text(&self) -> String {
        let mut out = phi_head_text(&self.phi);
        for term in self.terms.iter().rev() {
            for (j, mu_coeff) in term.mu.coeffs().iter().enumerate() {
                if mu_coeff.is_zero() {
                    continue;
                }
                let coeff = term.piece_coeff(j);
                let mut rest = String::new();
                if j >= 1 {
                    rest.push_str(&power_text(&Scalar::zero(), &Scalar::from_int(j as i64)));
                    rest.push_str(" * ");
                }
                rest.push_str(&power_text(&term.deriv.shift, &term.deriv.exponent));
                push_signed(&mut out, &coeff, &rest);
            }
        }
        out
    }

    /// LaTeX rendering of the same flattened form.
    pub fn to_latex(&self) -> String {
        let mut out = phi_head_latex(&self.phi);
        for term in self.terms.iter().rev() {
            for (j, mu_coeff) in term.mu.coeffs().iter().enumerate() {
                if mu_coeff.is_zero() {
                    continue;
                }
                let coeff = term.piece_coeff(j);
                let mut rest = String::new();
                if j >= 1 {
                    rest.push_str(&latex_power("x", &Scalar::from_int(j as i64)));
                    rest.push(' ');
                }
                let base = if term.deriv.shift.is_zero() {
                    "x".to_string()
                } else {
                    format!("(x+{})", latex_scalar_inline(&term.deriv.shift))
                };
                rest.push_str(&latex_power(&base, &term.deriv.exponent));
                push_signed_latex(&mut out, &coeff, &rest);
            }
        }
        out
    }
}

impl CollectedSeries {
    /// Canonical collected rendering:
    /// `x^(1/2) * (1 - 1/8 * x^-1 - 7/128 * x^-2)` for powers,
    /// `x*log(x) + 1/2 - 1/12 * x^-1` for the `x log x` head.
    pub fn to_text(&self) -> String {
        if self.has_xlogx() {
            let mut out = "x*log(x)".to_string();
            for (offset, coeff) in self.terms() {
                if *offset == 0 {
                    let neg = coeff.to_f64() < 0.0;
                    out.push_str(if neg { " - " } else { " + " });
                    out.push_str(&magnitude_text(coeff));
                } else {
                    push_signed(&mut out, coeff, &format!("x^{offset}"));
                }
            }
            out
        } else {
            let mut inner = String::new();
            for (i, (offset, coeff)) in self.terms().iter().enumerate() {
                if i == 0 && *offset == 0 {
                    inner.push_str(&scalar_text(coeff));
                    continue;
                }
                push_signed(&mut inner, coeff, &format!("x^{offset}"));
            }
            format!(
                "{} * ({inner})",
                power_text(&Scalar::zero(), self.base_exponent())
            )
        }
    }

    pub fn to_latex(&self) -> String {
        if self.has_xlogx() {
            let mut out = r"x\log(x)".to_string();
            for (offset, coeff) in self.terms() {
                let rest = if *offset == 0 {
                    String::new()
                } else {
                    format!("x^{{{offset}}}")
                };
                push_signed_latex(&mut out, coeff, &rest);
            }
            out
        } else {
            let mut inner = String::new();
            for (i, (offset, coeff)) in self.terms().iter().enumerate() {
                if i == 0 && *offset == 0 {
                    inner.push_str(&latex_scalar_inline(coeff));
                    continue;
                }
                push_signed_latex(&mut inner, coeff, &format!("x^{{{offset}}}"));
            }
            format!(
                r"{}\left({inner}\right)",
                latex_power("x", self.base_exponent())
            )
        }
    }
}

fn magnitude_text(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) => r.abs().to_string(),
        Scalar::Real(v) => v.abs().to_string(),
    }
}

// --------------------------------------------------------------- latex

fn latex_scalar_inline(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) if r.is_integer() => r.to_string(),
        Scalar::Exact(r) => {
            let sign = if r.is_negative() { "-" } else { "" };
            let a = r.abs();
            format!(r"{sign}\frac{{{}}}{{{}}}", a.numer(), a.denom())
        }
        Scalar::Real(v) => v.to_string(),
    }
}

fn latex_power(base: &str, exponent: &Scalar) -> String {
    match exponent {
        Scalar::Exact(r) if r.is_one() => base.to_string(),
        _ => format!("{base}^{{{exponent}}}"),
    }
}

fn push_signed_latex(out: &mut String, coeff: &Scalar, rest: &str) {
    let neg = coeff.to_f64() < 0.0;
    out.push_str(if neg { " - " } else { " + " });
    let mag = match coeff {
        Scalar::Exact(r) => Scalar::Exact(r.abs()),
        Scalar::Real(v) => Scalar::Real(v.abs()),
    };
    let is_unit = match &mag {
        Scalar::Exact(r) => r.is_one(),
        Scalar::Real(v) => *v == 1.0,
    };
    if is_unit && !rest.is_empty() {
        out.push_str(rest);
    } else {
        out.push_str(&latex_scalar_inline(&mag));
        if !rest.is_empty() {
            out.push(' ');
            out.push_str(rest);
        }
    }
}

fn phi_head_latex(phi: &PhiSpec) -> String {
    match phi {
        PhiSpec::PowerShift { r, a } => {
            let base = if a.is_zero() {
                "x".to_string()
            } else {
                format!("(x+{})", latex_scalar_inline(a))
            };
            latex_power(&base, &r.neg())
        }
        PhiSpec::LogShift { beta } => format!(r"\log(x+{})", latex_scalar_inline(beta)),
        PhiSpec::XLogX => r"x\log(x)".to_string(),
    }
}

// ---------------------------------------------------------------- json

/// A rational as `["num", "den"]` strings, or a float for real-valued
/// parameters.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(untagged)]
pub enum NumJson {
    Exact(String, String),
    Real(f64),
}

impl From<&Scalar> for NumJson {
    fn from(s: &Scalar) -> Self {
        match s {
            Scalar::Exact(r) => NumJson::Exact(r.numer().to_string(), r.denom().to_string()),
            Scalar::Real(v) => NumJson::Real(*v),
        }
    }
}

impl From<&Rational> for NumJson {
    fn from(r: &Rational) -> Self {
        NumJson::Exact(r.numer().to_string(), r.denom().to_string())
    }
}

impl NumJson {
    fn to_scalar(&self) -> Result<Scalar> {
        match self {
            NumJson::Exact(n, d) => Ok(Scalar::Exact(parse_ratio(n, d)?)),
            NumJson::Real(v) => Ok(Scalar::Real(*v)),
        }
    }

    fn to_rational(&self) -> Result<Rational> {
        match self {
            NumJson::Exact(n, d) => parse_ratio(n, d),
            NumJson::Real(v) => Err(Error::Parse {
                message: format!("expected an exact rational, found float {v}"),
                position: 0,
            }),
        }
    }
}

fn parse_ratio(n: &str, d: &str) -> Result<Rational> {
    let make_err = |what: &str| Error::Parse {
        message: format!("bad rational component {what:?}"),
        position: 0,
    };
    let num = n.parse().map_err(|_| make_err(n))?;
    let den: num_bigint::BigInt = d.parse().map_err(|_| make_err(d))?;
    if den == 0.into() {
        return Err(make_err(d));
    }
    Ok(Rational::from_big(num, den))
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct FamilyJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<NumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<NumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mgf: Option<Vec<NumJson>>,
}

impl From<&FamilySpec> for FamilyJson {
    fn from(f: &FamilySpec) -> Self {
        let (p, mean, mgf) = match f {
            FamilySpec::Binomial { p } | FamilySpec::NegBinomial { p } => {
                (Some(NumJson::from(p)), None, None)
            }
            FamilySpec::CustomIid {
                base_mgf,
                base_mean,
            } => (
                None,
                Some(NumJson::from(base_mean)),
                Some(base_mgf.coeffs().iter().map(NumJson::from).collect()),
            ),
            _ => (None, None, None),
        };
        FamilyJson {
            name: f.name().to_string(),
            p,
            mean,
            mgf,
        }
    }
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<FamilySpec> {
        let missing = |what: &str| Error::Parse {
            message: format!("family {:?} is missing {what}", self.name),
            position: 0,
        };
        match self.name.as_str() {
            "poisson" => Ok(FamilySpec::poisson()),
            "gamma" => Ok(FamilySpec::gamma()),
            "binomial" => {
                FamilySpec::binomial(self.p.as_ref().ok_or_else(|| missing("p"))?.to_rational()?)
            }
            "negbinomial" => FamilySpec::neg_binomial(
                self.p.as_ref().ok_or_else(|| missing("p"))?.to_rational()?,
            ),
            "custom" => {
                let mean = self
                    .mean
                    .as_ref()
                    .ok_or_else(|| missing("mean"))?
                    .to_rational()?;
                let coeffs = self
                    .mgf
                    .as_ref()
                    .ok_or_else(|| missing("mgf"))?
                    .iter()
                    .map(NumJson::to_rational)
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    return Err(missing("mgf coefficients"));
                }
                FamilySpec::custom_iid(RatSeries::from_coeffs(coeffs), mean)
            }
            other => Err(Error::Parse {
                message: format!("unknown family {other:?}"),
                position: 0,
            }),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct PhiJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<NumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<NumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<NumJson>,
}

impl From<&PhiSpec> for PhiJson {
    fn from(phi: &PhiSpec) -> Self {
        let (r, a, beta) = match phi {
            PhiSpec::PowerShift { r, a } => (Some(NumJson::from(r)), Some(NumJson::from(a)), None),
            PhiSpec::LogShift { beta } => (None, None, Some(NumJson::from(beta))),
            PhiSpec::XLogX => (None, None, None),
        };
        PhiJson {
            kind: phi.name().to_string(),
            r,
            a,
            beta,
        }
    }
}

impl PhiJson {
    pub fn to_phi(&self) -> Result<PhiSpec> {
        let missing = |what: &str| Error::Parse {
            message: format!("phi {:?} is missing {what}", self.kind),
            position: 0,
        };
        match self.kind.as_str() {
            "power" => PhiSpec::power_shift(
                self.r.as_ref().ok_or_else(|| missing("r"))?.to_scalar()?,
                self.a.as_ref().ok_or_else(|| missing("a"))?.to_scalar()?,
            ),
            "log" => PhiSpec::log_shift(
                self.beta
                    .as_ref()
                    .ok_or_else(|| missing("beta"))?
                    .to_scalar()?,
            ),
            "xlogx" => Ok(PhiSpec::x_log_x()),
            other => Err(Error::Parse {
                message: format!("unknown phi {other:?}"),
                position: 0,
            }),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct DerivJson {
    pub coeff: NumJson,
    pub shift: NumJson,
    pub exponent: NumJson,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct TermJson {
    pub n: usize,
    pub mu: Vec<NumJson>,
    /// `null` for the head term `phi(x)` (`n = 0`).
    pub deriv: Option<DerivJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct ExpansionJson {
    pub family: FamilyJson,
    pub phi: PhiJson,
    #[serde(rename = "M")]
    pub m: usize,
    pub terms: Vec<TermJson>,
}

fn mu_json(mu: &RatPoly) -> Vec<NumJson> {
    mu.coeffs().iter().map(NumJson::from).collect()
}

/// Serializes an expansion: terms by descending `n`, then the head
/// `phi(x)` as an `n = 0` entry with `mu = [1]` and no power descriptor.
pub fn to_json(e: &Expansion) -> String {
    let mut terms: Vec<TermJson> = e
        .terms
        .iter()
        .rev()
        .map(|t| TermJson {
            n: t.n,
            mu: mu_json(&t.mu),
            deriv: Some(DerivJson {
                coeff: NumJson::from(&t.deriv.coeff),
                shift: NumJson::from(&t.deriv.shift),
                exponent: NumJson::from(&t.deriv.exponent),
            }),
        })
        .collect();
    terms.push(TermJson {
        n: 0,
        mu: vec![NumJson::from(&Rational::one())],
        deriv: None,
    });
    let doc = ExpansionJson {
        family: FamilyJson::from(&e.family),
        phi: PhiJson::from(&e.phi),
        m: e.m,
        terms,
    };
    serde_json::to_string(&doc).expect("expansion serialization cannot fail")
}

/// Parses an expansion JSON document and rebuilds the expansion from its
/// family/phi/M header, verifying that the embedded terms match the
/// rebuild (so a tampered document is rejected rather than trusted).
pub fn from_json(text: &str) -> Result<Expansion> {
    let doc: ExpansionJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        message: e.to_string(),
        position: e.column(),
    })?;
    let expansion = Expansion::build(doc.family.to_family()?, doc.phi.to_phi()?, doc.m)?;
    let expected = to_json(&expansion);
    let reserialized = serde_json::to_string(&doc).expect("reserialization cannot fail");
    if expected != reserialized {
        return Err(Error::Parse {
            message: "terms do not match the expansion generated by family/phi/M".into(),
            position: 0,
        });
    }
    Ok(expansion)
}

impl CollectedSeries {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct CoeffJson {
            offset: i64,
            exponent: NumJson,
            coeff: NumJson,
        }
        #[derive(Serialize)]
        struct CollectedJson {
            #[serde(rename = "M")]
            m: usize,
            xlogx: bool,
            base_exponent: NumJson,
            coefficients: Vec<CoeffJson>,
        }
        let doc = CollectedJson {
            m: self.m(),
            xlogx: self.has_xlogx(),
            base_exponent: NumJson::from(self.base_exponent()),
            coefficients: self
                .terms()
                .iter()
                .map(|(offset, coeff)| CoeffJson {
                    offset: *offset,
                    exponent: NumJson::from(&self.exponent(*offset)),
                    coeff: NumJson::from(coeff),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("collected serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sqrt_phi() -> PhiSpec {
        PhiSpec::power_shift(Scalar::Exact(rat(-1, 2)), Scalar::zero()).unwrap()
    }

    #[test]
    fn collected_text_poisson_sqrt() {
        let e = Expansion::build(FamilySpec::poisson(), sqrt_phi(), 2).unwrap();
        let c = e.collect_powers().unwrap();
        assert_eq!(c.to_text(), "x^(1/2) * (1 - 1/8 * x^-1)");
        let e3 = Expansion::build(FamilySpec::poisson(), sqrt_phi(), 3).unwrap();
        assert_eq!(
            e3.collect_powers().unwrap().to_text(),
            "x^(1/2) * (1 - 1/8 * x^-1 - 7/128 * x^-2)"
        );
    }

    #[test]
    fn collected_text_gamma_xlogx() {
        let e = Expansion::build(FamilySpec::gamma(), PhiSpec::x_log_x(), 3).unwrap();
        assert_eq!(
            e.collect_powers().unwrap().to_text(),
            "x*log(x) + 1/2 - 1/12 * x^-1"
        );
    }

    #[test]
    fn raw_text_m1_is_phi() {
        let phi = PhiSpec::log_shift(Scalar::one()).unwrap();
        let e = Expansion::build(FamilySpec::poisson(), phi, 1).unwrap();
        assert_eq!(e.to_text(), "log(x+1)");
    }

    #[test]
    fn raw_text_binomial_log() {
        // head + descending n; n=2 piece has coefficient -q/2 = -1/4
        let phi = PhiSpec::log_shift(Scalar::one()).unwrap();
        let fam = FamilySpec::binomial(rat(1, 2)).unwrap();
        let e = Expansion::build(fam, phi, 2).unwrap();
        assert_eq!(e.to_text(), "log(x+1) - 1/4 * x * (x+1)^(-2)");
    }

    #[test]
    fn latex_negbinomial_power_contains_exact_n2_coefficient() {
        // r(r+1)/(2p) = 2 for r=1, p=1/2
        let phi = PhiSpec::power_shift(Scalar::one(), Scalar::one()).unwrap();
        let fam = FamilySpec::neg_binomial(rat(1, 2)).unwrap();
        let e = Expansion::build(fam, phi, 3).unwrap();
        let latex = e.to_latex();
        assert!(
            latex.contains("+ 2 x (x+1)^{-3}"),
            "n=2 coefficient not rendered exactly: {latex}"
        );
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let cases = vec![
            Expansion::build(FamilySpec::poisson(), sqrt_phi(), 3).unwrap(),
            Expansion::build(
                FamilySpec::binomial(rat(1, 3)).unwrap(),
                PhiSpec::log_shift(Scalar::one()).unwrap(),
                2,
            )
            .unwrap(),
            Expansion::build(
                FamilySpec::gamma(),
                PhiSpec::power_shift(Scalar::Real(0.75), Scalar::zero()).unwrap(),
                3,
            )
            .unwrap(),
            Expansion::build(FamilySpec::gamma(), PhiSpec::x_log_x(), 1).unwrap(),
        ];
        for e in cases {
            let first = to_json(&e);
            let parsed = from_json(&first).unwrap();
            assert_eq!(to_json(&parsed), first);
        }
    }

    #[test]
    fn json_m1_has_single_phi_term() {
        let e = Expansion::build(FamilySpec::poisson(), sqrt_phi(), 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&e)).unwrap();
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0]["n"], 0);
        assert!(terms[0]["deriv"].is_null());
    }

    #[test]
    fn json_rejects_tampered_terms() {
        let e = Expansion::build(FamilySpec::poisson(), sqrt_phi(), 3).unwrap();
        let tampered = to_json(&e).replace("\"3\"", "\"4\"");
        assert!(from_json(&tampered).is_err());
    }

    #[test]
    fn custom_family_json_round_trip() {
        let p = rat(1, 2);
        let mgf = RatSeries::exp_s(8)
            .scale(&p)
            .add_constant(&(&Rational::one() - &p));
        let fam = FamilySpec::custom_iid(mgf, p).unwrap();
        let e = Expansion::build(fam, sqrt_phi(), 3).unwrap();
        let first = to_json(&e);
        assert_eq!(to_json(&from_json(&first).unwrap()), first);
    }
}
