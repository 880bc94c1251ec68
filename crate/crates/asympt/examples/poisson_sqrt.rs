//! The classic square-root series: E[sqrt(K)] for K ~ Poisson(x)
//! expands as sqrt(x) (1 - 1/(8x) - 7/(128 x^2) + O(x^-3)).
//!
//! Builds the expansion with exact rational coefficients, then checks it
//! against the brute-force oracle at a few means.

use asympt::oracle::expect_poisson;
use asympt::{Expansion, FamilySpec, PhiSpec, Rational, Scalar};

fn main() {
    let sqrt = PhiSpec::power_shift(Scalar::Exact(Rational::new(-1, 2)), Scalar::zero())
        .expect("valid phi");

    let expansion = Expansion::build(FamilySpec::poisson(), sqrt, 3).expect("valid expansion");
    let collected = expansion
        .collect_powers()
        .expect("sqrt collects into powers");

    println!("collected form : {}", collected.to_text());
    println!("latex          : {}", collected.to_latex());
    println!();
    println!(
        "{:>8} {:>22} {:>22} {:>12}",
        "x", "oracle", "expansion", "abs err"
    );
    for x in [25.0, 100.0, 400.0, 1600.0] {
        let oracle = expect_poisson(&expansion.phi, x, 1e-13).expect("oracle converges");
        let s = expansion.evaluate(x).expect("in domain");
        println!(
            "{x:>8} {:>22.15} {s:>22.15} {:>12.3e}",
            oracle.value,
            (oracle.value - s).abs()
        );
    }
    println!();
    println!("the error column shrinks like x^-3 relative to sqrt(x), i.e. x^-(5/2) absolutely");
}
