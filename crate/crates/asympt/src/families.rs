//! Distribution families whose mgf has the form `exp(x * g(s))`, indexed
//! by their mean `x`.
//!
//! Each family exposes its `g(s)` series exactly; central moments
//! `mu_n(x)` then come out of one uniform recursion that converts
//! cumulants `x * g^(j)(0)` to central moments:
//!
//! ```text
//! mu_n = sum_{j=0}^{n-2} C(n-1, j) * mu_j * x * g^(n-j)(0),   n >= 2,
//! ```
//!
//! with `mu_0 = 1`, `mu_1 = 0`. The classical per-family recursions
//! (Poisson, gamma) are kept as test cross-checks rather than code paths.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{RatPoly, RatSeries, Rational};

/// A distribution family with mgf `exp(x * g(s))`, normalized so that
/// `g(0) = 0` and `g'(0) = 1` (the mean of `U_x` is `x`).
#[derive(Clone, PartialEq)]
pub enum FamilySpec {
    /// `g(s) = e^s - 1`.
    Poisson,
    /// `Bi(n, p)` indexed by `x = n*p`; `g(s) = log(q + p e^s) / p`.
    Binomial { p: Rational },
    /// `NB(n, p)` indexed by `x = n*q/p`; `g(s) = (p/q) log(p / (1 - q e^s))`.
    NegBinomial { p: Rational },
    /// `Gam(x, 1)`; `g(s) = -log(1 - s)`.
    Gamma,
    /// Sums of i.i.d. copies of a base variable with the given mgf series
    /// and mean, indexed by the sum's mean: `g(s) = log(mgf(s)) / mean`.
    CustomIid {
        base_mgf: RatSeries,
        base_mean: Rational,
    },
}

fn check_p(p: &Rational) -> Result<()> {
    if !p.is_positive() || !(&Rational::one() - p).is_positive() {
        return Err(Error::Parameter(format!(
            "p must lie strictly between 0 and 1, got {p}"
        )));
    }
    Ok(())
}

impl FamilySpec {
    pub fn poisson() -> Self {
        FamilySpec::Poisson
    }

    pub fn binomial(p: Rational) -> Result<Self> {
        check_p(&p)?;
        Ok(FamilySpec::Binomial { p })
    }

    pub fn neg_binomial(p: Rational) -> Result<Self> {
        check_p(&p)?;
        Ok(FamilySpec::NegBinomial { p })
    }

    pub fn gamma() -> Self {
        FamilySpec::Gamma
    }

    /// Validates the normalization `g'(0) = 1` instead of silently
    /// rescaling: the base mgf must have unit constant term and its `s`
    /// coefficient must equal the declared mean.
    pub fn custom_iid(base_mgf: RatSeries, base_mean: Rational) -> Result<Self> {
        if !base_mean.is_positive() {
            return Err(Error::Parameter(format!(
                "base mean must be positive, got {base_mean}"
            )));
        }
        if !base_mgf.coeff(0).is_one() {
            return Err(Error::Parameter(format!(
                "base mgf must have constant term 1, got {}",
                base_mgf.coeff(0)
            )));
        }
        if base_mgf.order() < 1 || base_mgf.coeff(1) != base_mean {
            return Err(Error::Parameter(format!(
                "base mgf s-coefficient {} does not match mean {base_mean}; g'(0) must be 1",
                base_mgf.coeff(1)
            )));
        }
        Ok(FamilySpec::CustomIid {
            base_mgf,
            base_mean,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Poisson => "poisson",
            FamilySpec::Binomial { .. } => "binomial",
            FamilySpec::NegBinomial { .. } => "negbinomial",
            FamilySpec::Gamma => "gamma",
            FamilySpec::CustomIid { .. } => "custom",
        }
    }

    /// Exact coefficients of `g(s)` through `s^order` (`order >= 2`).
    pub fn g_series(&self, order: usize) -> Result<RatSeries> {
        if order < 2 {
            return Err(Error::Parameter(format!(
                "g-series order must be at least 2, got {order}"
            )));
        }
        let g = match self {
            FamilySpec::Poisson => {
                // e^s - 1
                RatSeries::exp_s(order).add_constant(&-Rational::one())
            }
            FamilySpec::Binomial { p } => {
                // log(q + p e^s) / p
                let q = &Rational::one() - p;
                RatSeries::exp_s(order)
                    .scale(p)
                    .add_constant(&q)
                    .log()?
                    .scale(&p.recip()?)
            }
            FamilySpec::NegBinomial { p } => {
                // (p/q) log(p / (1 - q e^s)) = -(p/q) log((1 - q e^s) / p)
                let q = &Rational::one() - p;
                RatSeries::exp_s(order)
                    .scale(&-q.clone())
                    .add_constant(&Rational::one())
                    .scale(&p.recip()?)
                    .log()?
                    .scale(&-(p / &q))
            }
            FamilySpec::Gamma => {
                // -log(1 - s): coefficients s^j / j
                let coeffs = (0..=order)
                    .map(|j| {
                        if j == 0 {
                            Rational::zero()
                        } else {
                            Rational::new(1, j as i64)
                        }
                    })
                    .collect();
                RatSeries::from_coeffs(coeffs)
            }
            FamilySpec::CustomIid {
                base_mgf,
                base_mean,
            } => {
                if base_mgf.order() < order {
                    return Err(Error::Parameter(format!(
                        "base mgf only known to order {}, need {order}",
                        base_mgf.order()
                    )));
                }
                base_mgf.truncate(order)?.log()?.scale(&base_mean.recip()?)
            }
        };
        debug_assert!(g.coeff(0).is_zero() && g.coeff(1).is_one());
        Ok(g)
    }

    /// Central moments `mu_0 ..= mu_nmax` as exact polynomials in the
    /// mean `x`, via the cumulant recursion.
    pub fn central_moments(&self, nmax: usize) -> Result<Vec<RatPoly>> {
        let mut mus = Vec::with_capacity(nmax + 1);
        mus.push(RatPoly::one());
        if nmax == 0 {
            return Ok(mus);
        }
        mus.push(RatPoly::zero());
        if nmax == 1 {
            return Ok(mus);
        }
        let g = self.g_series(nmax.max(2))?;
        for n in 2..=nmax {
            let mut mu_n = RatPoly::zero();
            for j in 0..=n - 2 {
                let kappa = g.derivative_at_zero(n - j);
                if kappa.is_zero() {
                    continue;
                }
                let w = &Rational::binomial(n - 1, j) * &kappa;
                mu_n = &mu_n + &mus[j].mul_x().scale(&w);
            }
            mus.push(mu_n);
        }
        Ok(mus)
    }

    /// Coefficient table `c_kn` with `mu_n = sum_k c_kn x^(n-k+1)` for
    /// `2 <= n <= 2M-1`, `0 <= k <= n`.
    pub fn ckn_table(&self, m: usize) -> Result<CoeffTable> {
        assert!(m >= 1, "M must be positive");
        let nmax = 2 * m - 1;
        let mus = self.central_moments(nmax.max(2))?;
        let mut entries = BTreeMap::new();
        for (n, mu) in mus.iter().enumerate().skip(2).take(nmax - 1) {
            for k in 0..=n {
                entries.insert((n, k), mu.coeff(n - k + 1));
            }
        }
        Ok(CoeffTable {
            m,
            kind: CoeffKind::Ckn,
            entries,
        })
    }

    /// The mean `x` corresponding to a natural parameter: `n*p` for the
    /// binomial, `n*q/p` for the negative binomial, the identity for the
    /// Poisson and gamma (whose natural index is the mean itself).
    pub fn mean_index(&self, natural: &Rational) -> Result<Rational> {
        if !natural.is_positive() {
            return Err(Error::Parameter(format!(
                "natural parameter must be positive, got {natural}"
            )));
        }
        match self {
            FamilySpec::Binomial { p } | FamilySpec::NegBinomial { p } => {
                if !natural.is_integer() {
                    return Err(Error::Parameter(format!(
                        "discrete convolution parameter must be an integer, got {natural}"
                    )));
                }
                match self {
                    FamilySpec::Binomial { .. } => Ok(natural * p),
                    _ => Ok(&(natural * &(&Rational::one() - p)) / p),
                }
            }
            _ => Ok(natural.clone()),
        }
    }

    /// Inverse of [`mean_index`](Self::mean_index) for the discrete
    /// families: the integer `n` whose mean is `x`. Errors when `x` does
    /// not land on the family's natural grid.
    pub fn natural_index(&self, x: &Rational) -> Result<u64> {
        if !x.is_positive() {
            return Err(Error::Parameter(format!("mean must be positive, got {x}")));
        }
        let n = match self {
            FamilySpec::Binomial { p } => x / p,
            FamilySpec::NegBinomial { p } => &(x * p) / &(&Rational::one() - p),
            _ => {
                return Err(Error::Unsupported(
                    "natural index is only defined for the discrete families".into(),
                ))
            }
        };
        if !n.is_integer() {
            return Err(Error::Parameter(format!(
                "mean {x} does not correspond to an integer convolution parameter (n = {n})"
            )));
        }
        u64::try_from(n.numer().clone())
            .map_err(|_| Error::Parameter(format!("convolution parameter out of range: {n}")))
    }
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Poisson => write!(f, "Poisson"),
            FamilySpec::Binomial { p } => write!(f, "Binomial(p={p})"),
            FamilySpec::NegBinomial { p } => write!(f, "NegBinomial(p={p})"),
            FamilySpec::Gamma => write!(f, "Gamma"),
            FamilySpec::CustomIid { base_mean, .. } => write!(f, "CustomIid(mean={base_mean})"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Binomial { p } => write!(f, "binomial:p={p}"),
            FamilySpec::NegBinomial { p } => write!(f, "nb:p={p}"),
            FamilySpec::CustomIid { base_mean, .. } => write!(f, "custom:mean={base_mean}"),
            _ => write!(f, "{}", self.name()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffKind {
    /// From the mgf machinery (any family).
    Ckn,
    /// From the Poisson-only recursion.
    Bkn,
}

/// Table of the coefficients `c_kn` (or `b_kn`) of `x^(n-k+1)` in `mu_n`,
/// covering `2 <= n <= 2M-1`, `0 <= k <= n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffTable {
    m: usize,
    kind: CoeffKind,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl CoeffTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    /// `c_kn`; zero outside the stored range.
    pub fn get(&self, k: usize, n: usize) -> Rational {
        self.entries
            .get(&(n, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Entries in deterministic `(n, k)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(n, k), v)| (n, k, v))
    }

    pub fn n_range(&self) -> std::ops::RangeInclusive<usize> {
        2..=(2 * self.m - 1)
    }
}

/// The Poisson coefficient table computed purely from the classical
/// recursion, with no mgf machinery:
///
/// ```text
/// b_kk = 1 (k >= 2);   b_kn = 0 for n < k or n > 2k-2;
/// b_{k+1, n+1} = n * b_{k, n-1} + (n - k + 1) * b_kn.
/// ```
pub fn bkn_poisson(m: usize) -> CoeffTable {
    assert!(m >= 1, "M must be positive");
    let nmax = 2 * m - 1;
    let mut table: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for k in 2..=nmax {
        for n in k..=(2 * k - 2).min(nmax) {
            let value = if n == k {
                Rational::one()
            } else {
                // shifted recursion: b_{k,n} = (n-1) b_{k-1,n-2} + (n-k+1) b_{k-1,n-1}
                let lookup = |kk: usize, nn: usize| {
                    table.get(&(nn, kk)).cloned().unwrap_or_else(Rational::zero)
                };
                &(&Rational::from((n - 1) as i64) * &lookup(k - 1, n - 2))
                    + &(&Rational::from((n - k + 1) as i64) * &lookup(k - 1, n - 1))
            };
            table.insert((n, k), value);
        }
    }
    let mut entries = BTreeMap::new();
    for n in 2..=nmax {
        for k in 0..=n {
            entries.insert(
                (n, k),
                table.get(&(n, k)).cloned().unwrap_or_else(Rational::zero),
            );
        }
    }
    CoeffTable {
        m,
        kind: CoeffKind::Bkn,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn poisson_g_series() {
        // e^s - 1 through s^3
        let g = FamilySpec::poisson().g_series(3).unwrap();
        assert_eq!(g.coeffs(), &[rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
    }

    #[test]
    fn gamma_g_series() {
        // -log(1-s) through s^3
        let g = FamilySpec::gamma().g_series(3).unwrap();
        assert_eq!(g.coeffs(), &[rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 3)]);
    }

    #[test]
    fn binomial_g_series_half() {
        // g''(0) = q = 1/2, so the s^2 coefficient is 1/4
        let g = FamilySpec::binomial(rat(1, 2))
            .unwrap()
            .g_series(2)
            .unwrap();
        assert_eq!(g.coeffs(), &[rat(0, 1), rat(1, 1), rat(1, 4)]);
    }

    #[test]
    fn invalid_p_rejected() {
        assert!(FamilySpec::binomial(rat(0, 1)).is_err());
        assert!(FamilySpec::binomial(rat(1, 1)).is_err());
        assert!(FamilySpec::binomial(rat(3, 2)).is_err());
        assert!(FamilySpec::neg_binomial(rat(-1, 2)).is_err());
    }

    #[test]
    fn custom_iid_validation() {
        // Bernoulli(1/2): mgf = 1/2 + e^s/2
        let mgf = RatSeries::exp_s(6)
            .scale(&rat(1, 2))
            .add_constant(&rat(1, 2));
        assert!(FamilySpec::custom_iid(mgf.clone(), rat(1, 2)).is_ok());
        // wrong mean: g'(0) != 1 after normalization
        assert!(FamilySpec::custom_iid(mgf.clone(), rat(1, 3)).is_err());
        assert!(FamilySpec::custom_iid(mgf.clone(), rat(0, 1)).is_err());
        // mgf(0) != 1
        let bad = mgf.add_constant(&rat(1, 10));
        assert!(FamilySpec::custom_iid(bad, rat(1, 2)).is_err());
    }

    #[test]
    fn custom_iid_matches_binomial() {
        let p = rat(1, 3);
        let mgf = RatSeries::exp_s(9)
            .scale(&p)
            .add_constant(&(&Rational::one() - &p));
        let custom = FamilySpec::custom_iid(mgf, p.clone()).unwrap();
        let binom = FamilySpec::binomial(p).unwrap();
        assert_eq!(
            custom.g_series(9).unwrap().coeffs(),
            binom.g_series(9).unwrap().coeffs()
        );
        assert_eq!(
            custom.central_moments(8).unwrap(),
            binom.central_moments(8).unwrap()
        );
    }

    #[test]
    fn custom_iid_order_exhaustion() {
        // the base mgf caps how far g and the moments can be computed
        let fam = FamilySpec::custom_iid(RatSeries::exp_s(4), Rational::one()).unwrap();
        assert!(fam.g_series(4).is_ok());
        assert!(fam.g_series(5).is_err());
        assert!(fam.central_moments(4).is_ok());
        assert!(fam.central_moments(5).is_err());
    }

    #[test]
    fn poisson_central_moments() {
        // (1, 0, x, x, 3x^2 + x)
        let mus = FamilySpec::poisson().central_moments(4).unwrap();
        assert_eq!(mus[0], RatPoly::one());
        assert_eq!(mus[1], RatPoly::zero());
        assert_eq!(mus[2], RatPoly::x());
        assert_eq!(mus[3], RatPoly::x());
        assert_eq!(mus[4], poly(&[(0, 1), (1, 1), (3, 1)]));
    }

    #[test]
    fn binomial_central_moments() {
        // mu_4 = 3q^2 x^2 + q(1 - 6pq) x at general rational p
        let p = rat(1, 3);
        let q = rat(2, 3);
        let mus = FamilySpec::binomial(p.clone())
            .unwrap()
            .central_moments(4)
            .unwrap();
        assert_eq!(mus[2], RatPoly::x().scale(&q));
        assert_eq!(mus[3], RatPoly::x().scale(&(&(&q - &p) * &q)));
        let lin = &q * &(&Rational::one() - &(&rat(6, 1) * &(&p * &q)));
        let quad = &(&q * &q) * &rat(3, 1);
        assert_eq!(mus[4].coeff(1), lin);
        assert_eq!(mus[4].coeff(2), quad);
        assert_eq!(mus[4].degree(), 2);
    }

    #[test]
    fn gamma_central_moments() {
        // (1, 0, x, 2x, 3x^2 + 6x)
        let mus = FamilySpec::gamma().central_moments(4).unwrap();
        assert_eq!(mus[2], RatPoly::x());
        assert_eq!(mus[3], RatPoly::x().scale(&rat(2, 1)));
        assert_eq!(mus[4], poly(&[(0, 1), (6, 1), (3, 1)]));
    }

    #[test]
    fn negbinomial_central_moments() {
        // mu_4 = (3/p^2) x^2 + ((6q + p^2)/p^3) x, derived from the
        // closed-form NB moments rewritten in x = nq/p.
        let p = rat(1, 2);
        let q = rat(1, 2);
        let mus = FamilySpec::neg_binomial(p.clone())
            .unwrap()
            .central_moments(4)
            .unwrap();
        assert_eq!(mus[2], RatPoly::x().scale(&p.recip().unwrap())); // x/p
        let c33 = &(&Rational::one() + &q) / &(&p * &p);
        assert_eq!(mus[3], RatPoly::x().scale(&c33));
        let quad = rat(3, 1) / (&p * &p);
        let lin = &(&(&rat(6, 1) * &q) + &(&p * &p)) / &(&(&p * &p) * &p);
        assert_eq!(mus[4].coeff(2), quad);
        assert_eq!(mus[4].coeff(1), lin);
    }

    #[test]
    fn poisson_moment_recursion_holds() {
        // mu_{n+1} = x (dmu_n/dx + n mu_{n-1}) for 2 <= n <= 2M-2, M = 10
        let m = 10;
        let mus = FamilySpec::poisson().central_moments(2 * m - 1).unwrap();
        for n in 2..=(2 * m - 2) {
            let rhs = (&mus[n].derivative() + &mus[n - 1].scale(&rat(n as i64, 1))).mul_x();
            assert_eq!(mus[n + 1], rhs, "recursion fails at n={n}");
        }
    }

    #[test]
    fn gamma_moment_recursion_holds() {
        // mu_k = (k-1)(mu_{k-1} + x mu_{k-2}) for k >= 2
        let mus = FamilySpec::gamma().central_moments(19).unwrap();
        for k in 2..=19 {
            let rhs = (&mus[k - 1] + &mus[k - 2].mul_x()).scale(&rat((k - 1) as i64, 1));
            assert_eq!(mus[k], rhs, "recursion fails at k={k}");
        }
    }

    #[test]
    fn ckn_poisson_values() {
        let t = FamilySpec::poisson().ckn_table(3).unwrap();
        assert_eq!(t.get(3, 4), rat(3, 1));
        assert_eq!(t.get(4, 4), rat(1, 1));
        assert_eq!(t.get(2, 2), rat(1, 1));
        assert_eq!(t.get(0, 2), Rational::zero());
    }

    #[test]
    fn ckn_binomial_and_negbinomial_values() {
        let p = rat(1, 3);
        let q = rat(2, 3);
        let t = FamilySpec::binomial(p.clone())
            .unwrap()
            .ckn_table(2)
            .unwrap();
        // c_33 = (q - p) q
        assert_eq!(t.get(3, 3), &(&q - &p) * &q);

        let p = rat(1, 2);
        let q = rat(1, 2);
        let t = FamilySpec::neg_binomial(p.clone())
            .unwrap()
            .ckn_table(2)
            .unwrap();
        assert_eq!(t.get(2, 2), p.recip().unwrap());
        assert_eq!(t.get(3, 3), &(&Rational::one() + &q) / &(&p * &p));
    }

    #[test]
    fn bkn_recursion_values() {
        let t = bkn_poisson(3);
        assert_eq!(t.get(2, 2), rat(1, 1));
        assert_eq!(t.get(3, 4), rat(3, 1)); // 3*b_22 + 2*b_23 = 3
        assert_eq!(t.get(4, 5), rat(10, 1));
        assert_eq!(t.get(5, 5), rat(1, 1));
        assert_eq!(t.get(2, 3), Rational::zero()); // n > 2k-2
    }

    #[test]
    fn bkn_equals_ckn_for_poisson() {
        for m in 1..=10 {
            let b = bkn_poisson(m);
            let c = FamilySpec::poisson().ckn_table(m).unwrap();
            for (n, k, v) in b.iter() {
                assert_eq!(*v, c.get(k, n), "mismatch at k={k}, n={n}, M={m}");
            }
        }
    }

    #[test]
    fn degree_and_vanishing_invariants() {
        let families = [
            FamilySpec::poisson(),
            FamilySpec::binomial(rat(1, 3)).unwrap(),
            FamilySpec::neg_binomial(rat(2, 5)).unwrap(),
            FamilySpec::gamma(),
        ];
        for fam in &families {
            let m = 10;
            let mus = fam.central_moments(2 * m - 1).unwrap();
            assert_eq!(mus[1], RatPoly::zero());
            for (n, mu) in mus.iter().enumerate().skip(2) {
                assert!(
                    mu.degree() <= (n / 2) as isize,
                    "{fam:?}: deg mu_{n} = {} > floor(n/2)",
                    mu.degree()
                );
            }
            let t = fam.ckn_table(m).unwrap();
            for (n, k, v) in t.iter() {
                if k <= n.div_ceil(2) {
                    assert!(v.is_zero(), "{fam:?}: c[{k},{n}] = {v} should vanish");
                }
            }
        }
    }

    #[test]
    fn binomial_moments_vanish_as_q_to_zero() {
        // Every coefficient of mu_n (n >= 2), seen as a polynomial in p,
        // is divisible by q = 1 - p. Checked exactly: interpolate the
        // coefficient through enough rational p values to determine the
        // polynomial, then evaluate at p = 1.
        for n in 2..=8usize {
            let npts = n + 2; // coefficient degree in p is at most n-1
            let pts: Vec<Rational> = (2..npts + 2).map(|d| rat(1, d as i64)).collect();
            let deg_n = FamilySpec::binomial(pts[0].clone())
                .unwrap()
                .central_moments(n)
                .unwrap()[n]
                .degree();
            for j in 0..=deg_n.max(0) as usize {
                let values: Vec<Rational> = pts
                    .iter()
                    .map(|p| {
                        FamilySpec::binomial(p.clone())
                            .unwrap()
                            .central_moments(n)
                            .unwrap()[n]
                            .coeff(j)
                    })
                    .collect();
                let at_one = lagrange_eval(&pts, &values, &Rational::one());
                assert!(
                    at_one.is_zero(),
                    "coefficient of x^{j} in mu_{n} not divisible by q: value at p=1 is {at_one}"
                );
            }
        }
    }

    /// Exact Lagrange interpolation through `(xs[i], ys[i])`, evaluated at `x`.
    fn lagrange_eval(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (i, yi) in ys.iter().enumerate() {
            let mut term = yi.clone();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    term = &term * &(&(x - xj) / &(&xs[i] - xj));
                }
            }
            total += &term;
        }
        total
    }

    #[test]
    fn mean_index_maps() {
        let b = FamilySpec::binomial(rat(1, 2)).unwrap();
        assert_eq!(b.mean_index(&rat(10, 1)).unwrap(), rat(5, 1));
        assert_eq!(b.natural_index(&rat(5, 1)).unwrap(), 10);
        let nb = FamilySpec::neg_binomial(rat(1, 2)).unwrap();
        assert_eq!(nb.mean_index(&rat(10, 1)).unwrap(), rat(10, 1));
        assert_eq!(nb.natural_index(&rat(10, 1)).unwrap(), 10);
        assert_eq!(
            FamilySpec::gamma().mean_index(&rat(7, 1)).unwrap(),
            rat(7, 1)
        );
        assert!(b.mean_index(&rat(0, 1)).is_err());
        assert!(b.mean_index(&rat(7, 2)).is_err()); // non-integer n
        assert!(b.natural_index(&rat(11, 4)).is_err()); // n = 11/2
        assert!(FamilySpec::poisson().natural_index(&rat(5, 1)).is_err());
    }
}
