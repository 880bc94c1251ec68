//! Binomial analog of the square-root series:
//! sum_k C(n,k) p^k q^(n-k) sqrt(k)
//!   = sqrt(np) [1 - (q/8)/(np) + ((q-p)q/16 - 15q^2/128)/(np)^2 + O(n^-3)].
//!
//! The collected coefficients are exact rational functions of p; this
//! example prints them for a few p and spot-checks the expansion at
//! p = 1/3 against the exact finite-sum oracle.

use asympt::oracle::expect_binomial;
use asympt::{Expansion, FamilySpec, PhiSpec, Rational, Scalar};

fn main() {
    let sqrt = PhiSpec::power_shift(Scalar::Exact(Rational::new(-1, 2)), Scalar::zero())
        .expect("valid phi");

    for (num, den) in [(1i64, 4i64), (1, 3), (1, 2), (2, 3)] {
        let p = Rational::new(num, den);
        let family = FamilySpec::binomial(p.clone()).expect("p in (0,1)");
        let e = Expansion::build(family, sqrt.clone(), 3).expect("valid expansion");
        let c = e.collect_powers().expect("collects");
        println!("p = {p}: {}", c.to_text());
    }

    println!();
    let p = Rational::new(1, 3);
    let family = FamilySpec::binomial(p.clone()).expect("p in (0,1)");
    let e = Expansion::build(family.clone(), sqrt, 3).expect("valid expansion");
    println!("p = 1/3, spot checks (x = np):");
    println!(
        "{:>6} {:>8} {:>22} {:>22} {:>12}",
        "n", "x", "oracle", "expansion", "abs err"
    );
    for n in [300u64, 1200, 4800] {
        let x = family
            .mean_index(&Rational::from(n as i64))
            .expect("valid index")
            .to_f64();
        let oracle = expect_binomial(&e.phi, n, p.to_f64()).expect("finite sum");
        let s = e.evaluate(x).expect("in domain");
        println!(
            "{n:>6} {x:>8} {:>22.15} {s:>22.15} {:>12.3e}",
            oracle.value,
            (oracle.value - s).abs()
        );
    }
}
