//! Custom convolution families: any i.i.d. sum with a known base mgf
//! fits the framework via g(s) = log(E e^{sY}) / E[Y], indexed by the
//! sum's mean.
//!
//! Here the base variable is Bernoulli(p), whose sums are binomial, so
//! the custom family must reproduce the binomial tables exactly.

use asympt::{Expansion, FamilySpec, PhiSpec, RatSeries, Rational, Scalar};

fn main() {
    let p = Rational::new(1, 4);
    let q = &Rational::one() - &p;

    // Bernoulli(p) mgf: q + p e^s, as an exact series
    let base_mgf = RatSeries::exp_s(12).scale(&p).add_constant(&q);
    let custom = FamilySpec::custom_iid(base_mgf, p.clone()).expect("valid base");
    let binomial = FamilySpec::binomial(p).expect("p in (0,1)");

    println!(
        "g-series (custom)  : {}",
        custom.g_series(6).expect("computes")
    );
    println!(
        "g-series (binomial): {}",
        binomial.g_series(6).expect("computes")
    );
    println!();

    let mus_custom = custom.central_moments(8).expect("computes");
    let mus_binom = binomial.central_moments(8).expect("computes");
    println!("central moments agree: {}", mus_custom == mus_binom);
    for (n, mu) in mus_custom.iter().enumerate().take(6) {
        println!("  mu_{n} = {mu}");
    }
    println!();

    // and the expansions built on top agree too
    let phi = PhiSpec::log_shift(Scalar::one()).expect("valid phi");
    let e_custom = Expansion::build(custom, phi.clone(), 3).expect("valid expansion");
    let e_binom = Expansion::build(binomial, phi, 3).expect("valid expansion");
    println!("expansion (custom): {}", e_custom.to_text());
    let x = 200.0;
    println!(
        "S(200) custom vs binomial: {} vs {}",
        e_custom.evaluate(x).expect("in domain"),
        e_binom.evaluate(x).expect("in domain")
    );
}
