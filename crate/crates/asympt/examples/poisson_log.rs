//! The Poisson log series: e^-x sum_k x^k log(k+1) / k! equals
//! log x + 1/(2x) + 1/(12 x^2) + O(x^-3).
//!
//! The reference polynomial in 1/x comes from re-expanding the M=3
//! expansion of log(x+1); here we check the oracle against it directly
//! and fit the decay exponent of the difference.

use asympt::oracle::expect_poisson;
use asympt::verify::fit_slope;
use asympt::{PhiSpec, Scalar};

fn main() {
    let phi = PhiSpec::log_shift(Scalar::one()).expect("valid phi");
    let mut points = Vec::new();
    println!(
        "{:>6} {:>22} {:>22} {:>12}",
        "x", "E[log(K+1)]", "log x + 1/2x + 1/12x^2", "diff"
    );
    for &x in &[100.0, 200.0, 400.0, 800.0] {
        let oracle = expect_poisson(&phi, x, 1e-13).expect("oracle converges");
        let reference = x.ln() + 1.0 / (2.0 * x) + 1.0 / (12.0 * x * x);
        let diff = (oracle.value - reference).abs();
        points.push((x, diff));
        println!(
            "{x:>6} {:>22.15} {reference:>22.15} {diff:>12.3e}",
            oracle.value
        );
    }
    let slope = fit_slope(&points).expect("enough points");
    println!();
    println!("fitted decay slope: {slope:.4} (the remainder is O(x^-3))");
}
