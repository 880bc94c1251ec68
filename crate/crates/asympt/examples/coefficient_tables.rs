//! The coefficient tables behind the expansions: mu_n(x) as exact
//! polynomials, the c_kn table (mu_n = sum_k c_kn x^(n-k+1)), and the
//! classical Poisson-only recursion that reproduces the Poisson table
//! without any mgf machinery.

use asympt::{bkn_poisson, FamilySpec, Rational};

fn main() {
    for family in [
        FamilySpec::poisson(),
        FamilySpec::binomial(Rational::new(1, 3)).expect("p in (0,1)"),
        FamilySpec::neg_binomial(Rational::new(1, 2)).expect("p in (0,1)"),
        FamilySpec::gamma(),
    ] {
        println!("central moments, {family}:");
        let mus = family.central_moments(6).expect("computes");
        for (n, mu) in mus.iter().enumerate() {
            println!("  mu_{n} = {mu}");
        }
        println!();
    }

    println!("Poisson c_kn for 2 <= n <= 5 (nonzero entries):");
    let table = FamilySpec::poisson().ckn_table(3).expect("computes");
    for (n, k, v) in table.iter() {
        if !v.is_zero() {
            println!("  c[{k},{n}] = {v}");
        }
    }

    println!();
    let b = bkn_poisson(10);
    let c = FamilySpec::poisson().ckn_table(10).expect("computes");
    let all_equal = b.iter().all(|(n, k, v)| *v == c.get(k, n));
    println!(
        "recursion-only b_kn equals mgf-derived c_kn for all n <= 19: {}",
        all_equal
    );
}
