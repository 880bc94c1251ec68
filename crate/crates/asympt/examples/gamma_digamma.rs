//! Deriving the digamma asymptotic from the gamma family.
//!
//! For U ~ Gam(x, 1), E[U log U] = x psi(x+1). Expanding phi(u) = u log u
//! to M = 3 gives x log x + 1/2 - 1/(12x) + O(log x / x^2), hence
//! psi(x+1) = log x + 1/(2x) - 1/(12 x^2) + O(log x / x^3).

use asympt::oracle::{digamma_reference, expect_gamma};
use asympt::{Expansion, FamilySpec, PhiSpec};

fn main() {
    let e = Expansion::build(FamilySpec::gamma(), PhiSpec::x_log_x(), 3).expect("valid expansion");
    let collected = e.collect_powers().expect("x log x collects");
    println!("E[U log U]  = {}  + O(log x / x^2)", collected.to_text());
    println!("so psi(x+1) = log x + 1/(2x) - 1/(12x^2) + O(log x / x^3)");
    println!();
    println!(
        "{:>6} {:>22} {:>22} {:>12}",
        "x", "S(x)/x", "psi(x+1)", "diff"
    );
    for &x in &[50.0, 100.0, 200.0, 400.0] {
        let s = e.evaluate(x).expect("in domain") / x;
        let psi = digamma_reference(x + 1.0).expect("x > 0");
        println!("{x:>6} {s:>22.15} {psi:>22.15} {:>12.3e}", (s - psi).abs());
    }
    println!();

    // and the oracle side: quadrature agrees with x psi(x+1)
    let x = 50.0;
    let oracle = expect_gamma(&PhiSpec::x_log_x(), x, 1e-13).expect("oracle converges");
    let identity = x * digamma_reference(x + 1.0).expect("x > 0");
    println!("oracle E[U log U] at x=50: {}", oracle.value);
    println!("x psi(x+1)               : {identity}");
    println!(
        "difference               : {:.3e}",
        (oracle.value - identity).abs()
    );
}
