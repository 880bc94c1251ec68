//! Quantitative verification: expansion-vs-oracle error tables, fitted
//! decay slopes against the `O(G(x) x^-M)` remainder claim, and exact
//! coefficient checks against known collected forms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::expansion::{CollectedSeries, Expansion};
use crate::families::FamilySpec;
use crate::oracle;
use crate::phicat::PhiSpec;
use crate::scalar::Scalar;

/// One row of an expansion-vs-oracle comparison at a single `x`.
#[derive(Clone, Copy, Debug)]
pub struct ErrorRow {
    pub x: f64,
    pub oracle: f64,
    pub expansion: f64,
    pub abs_err: f64,
    /// `abs_err * x^M / G(x)`: bounded iff the remainder claim holds.
    pub scaled_err: f64,
    /// Growth envelope `G(x)` used for the scaling.
    pub g: f64,
    /// Oracle truncation bound, for noise-floor filtering.
    pub oracle_tail: f64,
}

/// Compares `S_M` against the brute-force oracle on a grid of means.
///
/// `xs` must be strictly increasing and, for discrete families, must land
/// on the family's natural index grid. `tol` is the relative accuracy
/// target for each row; the oracle is run a decade tighter than the
/// expected error scale `G(x) x^-M` so rows measure the expansion, not
/// oracle noise.
pub fn error_table(
    family: &FamilySpec,
    phi: &PhiSpec,
    m: usize,
    xs: &[Rational],
    tol: f64,
) -> Result<Vec<ErrorRow>> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tol must be > 0, got {tol}")));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("grid must be strictly increasing".into()));
    }
    let expansion = Expansion::build(family.clone(), phi.clone(), m)?;
    let mut rows = Vec::with_capacity(xs.len());
    for xr in xs {
        let x = xr.to_f64();
        let g = phi.growth_envelope(x);
        let scale = g * x.powi(-(m as i32));
        let phix = phi.value(x)?.abs().max(f64::MIN_POSITIVE);
        let oracle_tol = (tol / 10.0 * scale / phix).clamp(1e-15, 1e-6);
        let o = oracle::expect_family(family, phi, xr, oracle_tol)?;
        let s = expansion.evaluate(x)?;
        if !o.value.is_finite() || !s.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite comparison at x = {x}: oracle {}, expansion {s}",
                o.value
            )));
        }
        let abs_err = (o.value - s).abs();
        rows.push(ErrorRow {
            x,
            oracle: o.value,
            expansion: s,
            abs_err,
            scaled_err: abs_err * x.powi(m as i32) / g,
            g,
            oracle_tail: o.tail_bound,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log(y)` against `log(x)`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(num / den)
}

/// Fitted slope of `log(abs_err / G(x))` versus `log(x)`.
///
/// Rows whose error sits at the oracle noise floor (within 10x the
/// oracle tail bound, or at the roundoff floor of the compared values)
/// are excluded. For catalog cases the contract is `slope <= -M + 0.3`.
pub fn decay_slope(rows: &[ErrorRow]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| {
            let noise_floor = (10.0 * r.oracle_tail).max(8.0 * f64::EPSILON * r.oracle.abs());
            r.abs_err > noise_floor && r.abs_err > 0.0
        })
        .map(|r| (r.x, r.abs_err / r.g))
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "only {} of {} rows rise above the oracle noise floor",
            usable.len(),
            rows.len()
        )));
    }
    fit_slope(&usable)
}

/// CSV emission: header plus one full-precision row per grid point.
pub fn rows_to_csv(rows: &[ErrorRow]) -> String {
    let mut out = String::from("x,oracle,expansion,abs_err,scaled_err\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.x, r.oracle, r.expansion, r.abs_err, r.scaled_err
        ));
    }
    out
}

/// Verdict of one exact coefficient comparison.
#[derive(Clone, Debug)]
pub struct CoefficientVerdict {
    pub offset: i64,
    pub expected: Rational,
    pub actual: Option<Rational>,
    pub pass: bool,
}

/// Report of an exact collected-coefficient check.
#[derive(Clone, Debug)]
pub struct CoefficientReport {
    pub verdicts: Vec<CoefficientVerdict>,
    pub pass: bool,
}

/// Compares a collected series against expected exact coefficients,
/// keyed by offset from the leading exponent (0, -1, -2, ...). Every
/// expected entry must match exactly, and the series must not contain
/// extra nonzero coefficients.
pub fn coefficient_check(
    collected: &CollectedSeries,
    expected: &BTreeMap<i64, Rational>,
) -> Result<CoefficientReport> {
    if !collected.is_exact() {
        return Err(Error::Unsupported(
            "coefficient check requires exact (rational-parameter) mode".into(),
        ));
    }
    let mut verdicts = Vec::new();
    let mut pass = true;
    for (&offset, want) in expected {
        let got = match collected.coefficient(offset) {
            Scalar::Exact(r) => Some(r),
            Scalar::Real(_) => None,
        };
        let ok = got.as_ref() == Some(want);
        pass &= ok;
        verdicts.push(CoefficientVerdict {
            offset,
            expected: want.clone(),
            actual: got,
            pass: ok,
        });
    }
    for (offset, coeff) in collected.terms() {
        if !expected.contains_key(offset) && !coeff.is_zero() {
            pass = false;
            verdicts.push(CoefficientVerdict {
                offset: *offset,
                expected: Rational::zero(),
                actual: coeff.as_exact().cloned(),
                pass: false,
            });
        }
    }
    Ok(CoefficientReport { verdicts, pass })
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

    fn grid(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| Rational::from(v)).collect()
    }

    #[test]
    fn synthetic_slope_is_exact() {
        // abs_err = c x^-3 with G = 1 must fit slope -3
        let rows: Vec<ErrorRow> = [100.0, 200.0, 400.0, 800.0]
            .iter()
            .map(|&x| ErrorRow {
                x,
                oracle: 1.0,
                expansion: 1.0,
                abs_err: 0.7 * x.powi(-3),
                scaled_err: 0.7,
                g: 1.0,
                oracle_tail: 0.0,
            })
            .collect();
        let s = decay_slope(&rows).unwrap();
        assert!((s + 3.0).abs() < 1e-12, "got {s}");
    }

    #[test]
    fn insufficient_rows_error() {
        let rows: Vec<ErrorRow> = (0..2)
            .map(|i| ErrorRow {
                x: 100.0 * (i + 1) as f64,
                oracle: 1.0,
                expansion: 1.0,
                abs_err: 1e-3,
                scaled_err: 1.0,
                g: 1.0,
                oracle_tail: 0.0,
            })
            .collect();
        assert!(matches!(
            decay_slope(&rows),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn m1_identity_phi_has_zero_error() {
        // phi(k) = k: S_1(x) = x = E U exactly, so abs_err sits at the
        // oracle floor at every x.
        let phi = PhiSpec::power_shift(Scalar::from_int(-1), Scalar::zero()).unwrap();
        let rows = error_table(
            &FamilySpec::poisson(),
            &phi,
            1,
            &grid(&[50, 100, 200, 400]),
            1e-10,
        )
        .unwrap();
        for r in &rows {
            assert!(
                r.abs_err <= (10.0 * r.oracle_tail).max(1e-10 * r.x),
                "x={}: abs_err {}",
                r.x,
                r.abs_err
            );
        }
        // every row is noise: no usable slope
        assert!(decay_slope(&rows).is_err());
    }

    #[test]
    fn poisson_sqrt_m3_table_and_slope() {
        let rows = error_table(
            &FamilySpec::poisson(),
            &sqrt_phi(),
            3,
            &grid(&[100, 200, 400, 800]),
            1e-12,
        )
        .unwrap();
        // errors must dominate the oracle tail at the largest x
        let last = rows.last().unwrap();
        assert!(
            last.abs_err >= 10.0 * last.oracle_tail,
            "abs_err {} vs tail {}",
            last.abs_err,
            last.oracle_tail
        );
        let slope = decay_slope(&rows).unwrap();
        assert!(
            slope <= -3.0 + 0.3,
            "scaled slope {slope} should be near -3"
        );
        // scaled errors stay bounded (non-exploding)
        let max_scaled = rows.iter().map(|r| r.scaled_err).fold(0.0, f64::max);
        let min_scaled = rows.iter().map(|r| r.scaled_err).fold(f64::MAX, f64::min);
        assert!(max_scaled / min_scaled < 10.0, "scaled errors explode");
    }

    #[test]
    fn binomial_log_m3_slope() {
        let fam = FamilySpec::binomial(rat(1, 2)).unwrap();
        let phi = PhiSpec::log_shift(Scalar::one()).unwrap();
        // x = np on the natural grid: n = 64..512
        let rows = error_table(&fam, &phi, 3, &grid(&[32, 64, 128, 256]), 1e-12).unwrap();
        let slope = decay_slope(&rows).unwrap();
        assert!(slope <= -2.7, "got {slope}");
    }

    #[test]
    fn discrete_grid_must_hit_integer_indices() {
        let fam = FamilySpec::binomial(rat(1, 3)).unwrap();
        let xs = vec![rat(100, 1)]; // n = 300 works
        assert!(error_table(&fam, &sqrt_phi(), 2, &xs, 1e-10).is_ok());
        let xs = vec![rat(100, 7)]; // n = 2100/7 -> 300/7 not an integer
        assert!(error_table(&fam, &sqrt_phi(), 2, &xs, 1e-10).is_err());
        // non-increasing grid rejected
        let xs = grid(&[100, 100]);
        assert!(error_table(&fam, &sqrt_phi(), 2, &xs, 1e-10).is_err());
    }

    #[test]
    fn coefficient_check_poisson_sqrt() {
        let e = Expansion::build(FamilySpec::poisson(), sqrt_phi(), 3).unwrap();
        let c = e.collect_powers().unwrap();
        let expected = BTreeMap::from([(0, rat(1, 1)), (-1, rat(-1, 8)), (-2, rat(-7, 128))]);
        let report = coefficient_check(&c, &expected).unwrap();
        assert!(report.pass);
        assert_eq!(report.verdicts.len(), 3);

        // a wrong expectation fails
        let bad = BTreeMap::from([(0, rat(1, 1)), (-1, rat(-1, 8)), (-2, rat(7, 128))]);
        assert!(!coefficient_check(&c, &bad).unwrap().pass);
        // a missing expectation fails (extra nonzero coefficient)
        let short = BTreeMap::from([(0, rat(1, 1)), (-1, rat(-1, 8))]);
        assert!(!coefficient_check(&c, &short).unwrap().pass);
    }

    #[test]
    fn coefficient_check_requires_exact_mode() {
        let phi = PhiSpec::power_shift(Scalar::Real(0.5), Scalar::zero()).unwrap();
        let e = Expansion::build(FamilySpec::poisson(), phi, 2).unwrap();
        let c = e.collect_powers().unwrap();
        assert!(matches!(
            coefficient_check(&c, &BTreeMap::new()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn csv_shape() {
        let rows = vec![ErrorRow {
            x: 100.0,
            oracle: 1.5,
            expansion: 1.5000001,
            abs_err: 1e-7,
            scaled_err: 0.1,
            g: 1.0,
            oracle_tail: 1e-12,
        }];
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,oracle,expansion,abs_err,scaled_err"));
        assert_eq!(lines.next(), Some("100,1.5,1.5000001,0.0000001,0.1"));
    }
}
