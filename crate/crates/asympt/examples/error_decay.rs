//! The verification workflow: error tables over a geometric grid of
//! means, CSV emission, and fitted decay slopes against the
//! O(G(x) x^-M) remainder claim.

use asympt::verify::{decay_slope, error_table, rows_to_csv};
use asympt::{FamilySpec, PhiSpec, Rational, Scalar};

fn main() {
    let grid: Vec<Rational> = [100i64, 200, 400, 800]
        .iter()
        .map(|&v| Rational::from(v))
        .collect();

    let cases: Vec<(FamilySpec, PhiSpec)> = vec![
        (
            FamilySpec::poisson(),
            PhiSpec::power_shift(Scalar::Exact(Rational::new(-1, 2)), Scalar::zero())
                .expect("valid phi"),
        ),
        (
            FamilySpec::binomial(Rational::new(1, 2)).expect("p in (0,1)"),
            PhiSpec::log_shift(Scalar::one()).expect("valid phi"),
        ),
        (FamilySpec::gamma(), PhiSpec::x_log_x()),
    ];

    for (family, phi) in &cases {
        for m in [2usize, 3] {
            let rows = error_table(family, phi, m, &grid, 1e-12).expect("verifies");
            let slope = decay_slope(&rows).expect("enough rows");
            println!("== {family} / {phi} / M={m}");
            print!("{}", rows_to_csv(&rows));
            println!(
                "scaled decay slope {slope:.3} (contract: <= -{m} + 0.3) -> pass={}",
                slope <= -(m as f64) + 0.3
            );
            println!();
        }
    }
}
