//! Inverse-moment expansions: E[(K+a)^-r] for binomial and negative
//! binomial K, a classical statistics quantity. With r = 1, a = 1 and
//! M = 3 the remainder is O(n^(-r-3)).

use asympt::verify::{error_table, fit_slope};
use asympt::{Expansion, FamilySpec, PhiSpec, Rational, Scalar};

fn main() {
    let phi = PhiSpec::power_shift(Scalar::one(), Scalar::one()).expect("valid phi");
    let p = Rational::new(1, 2);

    for family in [
        FamilySpec::binomial(p.clone()).expect("p in (0,1)"),
        FamilySpec::neg_binomial(p).expect("p in (0,1)"),
    ] {
        let e = Expansion::build(family.clone(), phi.clone(), 3).expect("valid expansion");
        println!("family {family}");
        println!("  raw terms: {}", e.to_text());

        // grid in the mean x; n = x/p (binomial) or xp/q (neg binomial)
        let xs: Vec<Rational> = [64i64, 128, 256, 512]
            .iter()
            .map(|&v| Rational::from(v))
            .collect();
        let rows = error_table(&family, &phi, 3, &xs, 1e-12).expect("verifies");
        println!(
            "  {:>6} {:>22} {:>22} {:>12}",
            "x", "oracle", "expansion", "abs err"
        );
        for r in &rows {
            println!(
                "  {:>6} {:>22.16} {:>22.16} {:>12.3e}",
                r.x, r.oracle, r.expansion, r.abs_err
            );
        }
        let slope =
            fit_slope(&rows.iter().map(|r| (r.x, r.abs_err)).collect::<Vec<_>>()).expect("fits");
        println!("  raw error decay slope: {slope:.3} (remainder O(x^-4))");
        println!();
    }
}
