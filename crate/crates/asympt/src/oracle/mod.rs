//! Brute-force expectation oracles: the independent ground truth that
//! expansions are verified against.
//!
//! Discrete families are summed outward from the distribution mode with
//! compensated accumulation (weights span hundreds of orders of
//! magnitude at large `x`; mode-outward order keeps the big terms
//! first). The gamma family is integrated by adaptive Simpson quadrature
//! on a window around the mean, grown until a sub-Gaussian tail bound
//! clears the tolerance. Results are deterministic: fixed summation
//! order, no parallelism.

mod kahan;
mod special;

pub use kahan::KahanSum;
pub use special::{digamma_reference, ln_gamma};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::families::FamilySpec;
use crate::phicat::PhiSpec;

/// Iteration caps. `ASYMPT_MAX_TERMS` overrides both when set.
#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    /// Maximum summand count for the discrete oracles.
    pub max_terms: usize,
    /// Maximum integrand evaluations for the gamma oracle.
    pub max_evals: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_terms: 10_000_000,
            max_evals: 1_000_000,
        }
    }
}

impl OracleLimits {
    pub fn from_env() -> Self {
        let mut limits = OracleLimits::default();
        if let Ok(v) = std::env::var("ASYMPT_MAX_TERMS") {
            if let Ok(n) = v.trim().parse::<usize>() {
                limits.max_terms = n;
                limits.max_evals = n;
            }
        }
        limits
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleMethod {
    Sum,
    Quadrature,
}

/// Value of `E[phi(U)]` with an honest account of what was truncated.
#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub value: f64,
    pub terms_used: usize,
    /// Estimated truncation error (0 for completed finite sums, up to
    /// floating-point dust).
    pub tail_bound: f64,
    pub method: OracleMethod,
}

/// Default polynomial-growth slack degree in the tail majorants:
/// `|phi(j)| <= phimax * (j/k)^degree` for the `j > k` tail. Covers the
/// moment-test polynomials up to `(u - x)^8`; the `PhiSpec` entry points
/// widen it further when the catalog member grows faster.
const GROWTH_DEGREE: f64 = 8.0;

fn degree_for(phi: &PhiSpec) -> f64 {
    GROWTH_DEGREE.max(phi.tail_growth_degree())
}

fn phi_closure(phi: &PhiSpec) -> impl Fn(f64) -> f64 + '_ {
    move |u| phi.value(u).unwrap_or(f64::NAN)
}

// ------------------------------------------------------------ discrete

struct DiscreteDist<'a> {
    mode: u64,
    log_weight_at_mode: f64,
    /// `w_{k+1} / w_k`
    ratio_up: &'a dyn Fn(u64) -> f64,
    /// `w_{k-1} / w_k`
    ratio_down: &'a dyn Fn(u64) -> f64,
    /// Inclusive end of support (`None` = infinite).
    upper_end: Option<u64>,
    /// Majorant of `w_{j+1}/w_j` for all `j > k` (infinite tails).
    tail_ratio: &'a dyn Fn(u64) -> f64,
    /// When set, ignore the tolerance and sum the entire support.
    exhaustive: bool,
    /// Polynomial degree assumed for `|f|` along the upper tail.
    growth_degree: f64,
}

/// Mode-outward two-sided summation with paired lower/upper steps.
///
/// The mode weight is seeded once through `ln_gamma` and every other
/// weight follows by exact-ish ratio recurrences; the final value is
/// normalized by the accumulated weight mass (which sums to one), so the
/// seed's rounding error cancels instead of scaling the whole result.
fn sum_discrete(
    f: &dyn Fn(f64) -> f64,
    dist: &DiscreteDist,
    tol: f64,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    let mode = dist.mode;
    let w_mode = dist.log_weight_at_mode.exp();
    let mut sum = KahanSum::new();
    let mut mass = KahanSum::new();
    let f_mode = f(mode as f64);
    sum.add(w_mode * f_mode);
    mass.add(w_mode);
    let mut terms = 1usize;

    // |f| near the lower end, for the lower-tail majorant: catalog
    // functions take their maximum over [0, k] at an endpoint (plus the
    // small interior dip of x log x).
    let f0 = f(0.0).abs();
    let f1 = f(1.0).abs();

    let (mut k_lo, mut w_lo) = (mode, w_mode);
    let (mut k_hi, mut w_hi) = (mode, w_mode);
    let mut lower_done = mode == 0;
    let mut upper_done = dist.upper_end == Some(mode);
    // recent |f| values on the upper side (guards isolated zeros)
    let mut recent_hi = [f_mode.abs(), f_mode.abs(), f_mode.abs()];

    let dust = f64::MIN_POSITIVE * 1e6;
    let mut tail_f; // bound on the missed phi-weighted sum
    let mut tail_m; // bound on the missed probability mass

    loop {
        if !lower_done {
            w_lo *= (dist.ratio_down)(k_lo);
            k_lo -= 1;
            sum.add(w_lo * f(k_lo as f64));
            mass.add(w_lo);
            terms += 1;
            if k_lo == 0 || w_lo == 0.0 {
                lower_done = true;
            }
        }
        if !upper_done {
            w_hi *= (dist.ratio_up)(k_hi);
            k_hi += 1;
            let fv = f(k_hi as f64);
            sum.add(w_hi * fv);
            mass.add(w_hi);
            terms += 1;
            recent_hi = [recent_hi[1], recent_hi[2], fv.abs()];
            if dist.upper_end == Some(k_hi) || w_hi == 0.0 {
                upper_done = true;
            }
        }

        if sum.value().is_nan() {
            return Err(Error::Domain(
                "phi evaluated outside its domain inside the oracle sum".into(),
            ));
        }

        (tail_f, tail_m) = (0.0, 0.0);
        if !lower_done {
            let phimax_lo = f0.max(f1).max(f(k_lo as f64).abs()).max(0.5);
            let mass_lo = w_lo * (dist.ratio_down)(k_lo) * k_lo as f64;
            tail_f += mass_lo * phimax_lo;
            tail_m += mass_lo;
        }
        if !upper_done {
            let rho = (dist.tail_ratio)(k_hi) * (dist.growth_degree / (k_hi + 1) as f64).exp();
            if rho < 1.0 {
                let phimax_hi = recent_hi.iter().cloned().fold(dust, f64::max);
                let mass_hi = w_hi * rho / (1.0 - rho);
                tail_f += mass_hi * phimax_hi;
                tail_m += mass_hi;
            } else {
                tail_f = f64::INFINITY;
                tail_m = f64::INFINITY;
            }
        }

        if lower_done && upper_done {
            break;
        }
        if !dist.exhaustive {
            let value = sum.value() / mass.value();
            let bound = tail_f + value.abs() * tail_m;
            let scale = value.abs().max(4.0 * f64::EPSILON * sum.abs_value());
            if bound <= tol * scale {
                break;
            }
        }
        if terms >= limits.max_terms {
            let value = sum.value() / mass.value();
            return Err(Error::Convergence {
                best: value,
                terms,
                tail_bound: tail_f + value.abs() * tail_m + dust,
            });
        }
    }

    let value = sum.value() / mass.value();
    Ok(OracleResult {
        value,
        terms_used: terms,
        tail_bound: tail_f + value.abs() * tail_m + dust,
        method: OracleMethod::Sum,
    })
}

/// `E[f(K)]` for `K ~ Poisson(x)`: `e^-x sum_k x^k f(k) / k!`. Assumes
/// `|f|` grows at most like `k^8` along the tail; use
/// [`expect_poisson`] for catalog members that grow faster.
pub fn expect_poisson_fn(
    f: impl Fn(f64) -> f64,
    x: f64,
    tol: f64,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    expect_poisson_deg(&f, x, tol, limits, GROWTH_DEGREE)
}

pub fn expect_poisson(phi: &PhiSpec, x: f64, tol: f64) -> Result<OracleResult> {
    expect_poisson_deg(
        &phi_closure(phi),
        x,
        tol,
        &OracleLimits::from_env(),
        degree_for(phi),
    )
}

fn expect_poisson_deg(
    f: &dyn Fn(f64) -> f64,
    x: f64,
    tol: f64,
    limits: &OracleLimits,
    growth_degree: f64,
) -> Result<OracleResult> {
    if !(x > 0.0) || !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "poisson oracle needs x > 0 and tol > 0, got x={x}, tol={tol}"
        )));
    }
    let mode = x.floor() as u64;
    let log_w = mode as f64 * x.ln() - x - ln_gamma(mode as f64 + 1.0);
    sum_discrete(
        f,
        &DiscreteDist {
            mode,
            log_weight_at_mode: log_w,
            ratio_up: &|k| x / (k + 1) as f64,
            ratio_down: &|k| k as f64 / x,
            upper_end: None,
            tail_ratio: &|k| x / (k + 2) as f64,
            exhaustive: false,
            growth_degree,
        },
        tol,
        limits,
    )
}

/// `E[f(K)]` for `K ~ Bi(n, p)`: the exact finite sum over `k = 0..=n`
/// (tolerance-free; `tail_bound` is floating-point dust only).
pub fn expect_binomial_fn(
    f: impl Fn(f64) -> f64,
    n: u64,
    p: f64,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    if n < 1 || !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!(
            "binomial oracle needs n >= 1 and 0 < p < 1, got n={n}, p={p}"
        )));
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let mode = (((n + 1) as f64) * p).floor().min(nf) as u64;
    let log_w = ln_gamma(nf + 1.0) - ln_gamma(mode as f64 + 1.0) - ln_gamma(nf - mode as f64 + 1.0)
        + mode as f64 * p.ln()
        + (nf - mode as f64) * q.ln();
    sum_discrete(
        &f,
        &DiscreteDist {
            mode,
            log_weight_at_mode: log_w,
            ratio_up: &|k| (nf - k as f64) / (k + 1) as f64 * (p / q),
            ratio_down: &|k| k as f64 / (nf - k as f64 + 1.0) * (q / p),
            upper_end: Some(n),
            tail_ratio: &|k| (nf - k as f64).max(0.0) / (k + 2) as f64 * (p / q),
            exhaustive: true,
            growth_degree: GROWTH_DEGREE,
        },
        0.0,
        limits,
    )
}

pub fn expect_binomial(phi: &PhiSpec, n: u64, p: f64) -> Result<OracleResult> {
    expect_binomial_fn(phi_closure(phi), n, p, &OracleLimits::from_env())
}

/// `E[f(K)]` for `K ~ NB(n, p)` (number of failures before the `n`-th
/// success): weights `C(n+k-1, k) p^n q^k`. Assumes `|f|` grows at most
/// like `k^8` along the tail; use [`expect_negbinomial`] for catalog
/// members that grow faster.
pub fn expect_negbinomial_fn(
    f: impl Fn(f64) -> f64,
    n: u64,
    p: f64,
    tol: f64,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    expect_negbinomial_deg(&f, n, p, tol, limits, GROWTH_DEGREE)
}

pub fn expect_negbinomial(phi: &PhiSpec, n: u64, p: f64, tol: f64) -> Result<OracleResult> {
    expect_negbinomial_deg(
        &phi_closure(phi),
        n,
        p,
        tol,
        &OracleLimits::from_env(),
        degree_for(phi),
    )
}

fn expect_negbinomial_deg(
    f: &dyn Fn(f64) -> f64,
    n: u64,
    p: f64,
    tol: f64,
    limits: &OracleLimits,
    growth_degree: f64,
) -> Result<OracleResult> {
    if n < 1 || !(p > 0.0 && p < 1.0) || !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "negative binomial oracle needs n >= 1, 0 < p < 1, tol > 0; got n={n}, p={p}, tol={tol}"
        )));
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let mode = (((nf - 1.0) * q / p).floor()).max(0.0) as u64;
    let log_w = ln_gamma(nf + mode as f64) - ln_gamma(mode as f64 + 1.0) - ln_gamma(nf)
        + nf * p.ln()
        + mode as f64 * q.ln();
    sum_discrete(
        f,
        &DiscreteDist {
            mode,
            log_weight_at_mode: log_w,
            ratio_up: &|k| (nf + k as f64) / (k + 1) as f64 * q,
            ratio_down: &|k| k as f64 / (nf + k as f64 - 1.0) / q,
            upper_end: None,
            tail_ratio: &|k| (nf + k as f64 + 1.0) / (k + 2) as f64 * q,
            exhaustive: false,
            growth_degree,
        },
        tol,
        limits,
    )
}

// --------------------------------------------------------------- gamma

/// `E[f(U)]` for `U ~ Gam(x, 1)`, `x >= 1`: adaptive quadrature of
/// `f(u) exp((x-1) log u - u - ln Gamma(x))` over a window
/// `[x - w sqrt(x), x + w sqrt(x)]` with `w` grown until a
/// Bernstein-style tail bound clears the tolerance.
///
/// The effective relative tolerance is floored at 1e-13: tighter targets
/// sit below what double-precision panel refinement can resolve. The
/// achieved accuracy is reported in `tail_bound` either way.
pub fn expect_gamma_fn(
    f: impl Fn(f64) -> f64,
    x: f64,
    tol: f64,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    expect_gamma_deg(&f, x, tol, limits, GROWTH_DEGREE)
}

pub fn expect_gamma(phi: &PhiSpec, x: f64, tol: f64) -> Result<OracleResult> {
    expect_gamma_deg(
        &phi_closure(phi),
        x,
        tol,
        &OracleLimits::from_env(),
        degree_for(phi),
    )
}

fn expect_gamma_deg(
    f: &dyn Fn(f64) -> f64,
    x: f64,
    tol: f64,
    limits: &OracleLimits,
    growth_degree: f64,
) -> Result<OracleResult> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tol must be > 0, got {tol}")));
    }
    let tol = tol.max(1e-13);
    if !(x >= 1.0) {
        return Err(Error::Unsupported(format!(
            "gamma oracle requires shape x >= 1 (integrable singularity below), got {x}"
        )));
    }
    // Centered log-density: (x-1) ln u - u - lnG(x) rewritten around the
    // density peak u = x-1 as c + (x-1)(ln1p(d) - d), d = u/(x-1) - 1.
    // The variable part stays O(w^2) instead of O(x), so the integrand
    // keeps ~1e-15 relative accuracy at large x; the constant c is a
    // common factor that the mass normalization cancels.
    let peak = x - 1.0;
    let log_c = if x == 1.0 {
        0.0
    } else {
        peak * peak.ln() - peak - ln_gamma(x)
    };
    let density = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let log_d = if x == 1.0 {
            -u
        } else {
            let d = u / peak - 1.0;
            log_c + peak * (d.ln_1p() - d)
        };
        log_d.exp()
    };
    let g = |u: f64| density(u) * f(u);

    let sd = x.sqrt();
    let scale = [x - 2.0 * sd, x - sd, x, x + sd, x + 2.0 * sd]
        .iter()
        .map(|&u| f(u.max(0.0)).abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    let tol_abs = tol * scale;

    // Grow the window until the tail estimate is in budget:
    // P(U >= x+t) <= exp(-t^2 / (2(x+t))), P(U <= x-t) <= exp(-t^2 / (2x)).
    let mut w = 6.0f64;
    let (lo, hi, tail_f, tail_m) = loop {
        let t = w * sd;
        let lo = (x - t).max(0.0);
        let hi = x + t;
        let upper = (-t * t / (2.0 * (x + t))).exp();
        let lower = if x - t <= 0.0 {
            0.0
        } else {
            (-t * t / (2.0 * x)).exp()
        };
        let phimax = f(lo).abs().max(f(hi).abs()).max(f64::MIN_POSITIVE);
        let slack = 2.0 * (growth_degree / t).exp();
        let tail_f = (upper + lower) * phimax * slack;
        let tail_m = (upper + lower) * 2.0;
        if tail_f + scale * tail_m < tol_abs / 2.0 || w > 300.0 {
            break (lo, hi, tail_f, tail_m);
        }
        w *= 1.25;
    };

    let mut quad_f = Quadrature {
        evals: 0,
        max_evals: limits.max_evals / 2,
        err_estimate: 0.0,
    };
    let mut quad_m = Quadrature {
        evals: 0,
        max_evals: limits.max_evals / 2,
        err_estimate: 0.0,
    };
    // pre-split at the density's feature scale sqrt(x) so the bump
    // cannot hide from the first Simpson estimate and top panels start
    // near convergence
    let panels = (2.0 * (hi - lo) / sd).ceil().max(16.0) as usize;
    let mut num = KahanSum::new(); // integral of phi * density
    let mut den = KahanSum::new(); // integral of density (window mass)
    let step = (hi - lo) / panels as f64;
    let mut outcome = Ok(());
    for i in 0..panels {
        let a = lo + i as f64 * step;
        let b = lo + (i + 1) as f64 * step;
        let panel_tol = tol_abs / (2.0 * panels as f64);
        match quad_f.adaptive_simpson(&g, a, b, panel_tol) {
            Ok(v) => num.add(v),
            Err(e) => {
                outcome = Err(e);
                break;
            }
        }
        match quad_m.adaptive_simpson(&density, a, b, panel_tol / scale.max(1.0)) {
            Ok(v) => den.add(v),
            Err(e) => {
                outcome = Err(e);
                break;
            }
        }
    }
    // normalizing by the window mass cancels the ln_gamma constant and
    // turns the missed-mass error into a second-order correction
    let value = num.value() / den.value().max(f64::MIN_POSITIVE);
    let tail_bound =
        tail_f + value.abs() * tail_m + quad_f.err_estimate + value.abs() * quad_m.err_estimate;
    let evals = quad_f.evals + quad_m.evals;
    match outcome {
        Ok(()) => Ok(OracleResult {
            value,
            terms_used: evals,
            tail_bound,
            method: OracleMethod::Quadrature,
        }),
        Err(Error::Convergence { .. }) => Err(Error::Convergence {
            best: value,
            terms: evals,
            tail_bound,
        }),
        Err(e) => Err(e),
    }
}

struct Quadrature {
    evals: usize,
    max_evals: usize,
    err_estimate: f64,
}

impl Quadrature {
    fn eval(&mut self, g: &dyn Fn(f64) -> f64, u: f64) -> Result<f64> {
        if self.evals >= self.max_evals {
            return Err(Error::Convergence {
                best: f64::NAN,
                terms: self.evals,
                tail_bound: f64::NAN,
            });
        }
        self.evals += 1;
        let v = g(u);
        if v.is_nan() {
            return Err(Error::Domain(format!(
                "integrand is NaN at u = {u} inside the gamma oracle"
            )));
        }
        Ok(v)
    }

    fn adaptive_simpson(
        &mut self,
        g: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        tol: f64,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let fa = self.eval(g, a)?;
        let fm = self.eval(g, m)?;
        let fb = self.eval(g, b)?;
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        self.recurse(g, a, b, fa, fm, fb, whole, tol, 30)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        g: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(g, lm)?;
        let frm = self.eval(g, rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        // once the refinement delta sits at the roundoff floor of the
        // panel's absolute mass, further subdivision only adds noise
        let panel_abs = (m - a) / 6.0 * (fa.abs() + 4.0 * flm.abs() + fm.abs())
            + (b - m) / 6.0 * (fm.abs() + 4.0 * frm.abs() + fb.abs());
        let noise_floor = 64.0 * f64::EPSILON * panel_abs;
        if depth == 0 || delta.abs() <= 15.0 * tol || delta.abs() <= noise_floor {
            self.err_estimate += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        let l = self.recurse(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.recurse(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
}

// ------------------------------------------------------------ dispatch

/// Routes to the right oracle for a family at mean `x` (mapping `x` to
/// the natural index for the discrete families). Custom i.i.d. families
/// have no closed-form weights here and are unsupported.
pub fn expect_family(
    family: &FamilySpec,
    phi: &PhiSpec,
    x: &Rational,
    tol: f64,
) -> Result<OracleResult> {
    match family {
        FamilySpec::Poisson => expect_poisson(phi, x.to_f64(), tol),
        FamilySpec::Binomial { p } => {
            let n = family.natural_index(x)?;
            expect_binomial(phi, n, p.to_f64())
        }
        FamilySpec::NegBinomial { p } => {
            let n = family.natural_index(x)?;
            expect_negbinomial(phi, n, p.to_f64(), tol)
        }
        FamilySpec::Gamma => expect_gamma(phi, x.to_f64(), tol),
        FamilySpec::CustomIid { .. } => Err(Error::Unsupported(
            "no brute-force oracle for custom i.i.d. families".into(),
        )),
    }
}
