//! Exact Taylor coefficients of x^2 + lambda/x^6 about its minimum -iR.

use spiked_spectra::numerics::{to_decimal, Precision};
use spiked_spectra::potentials::Potential;

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    for r in [1u32, 2, 20] {
        let v = Potential::integer(1, 3, p.real(r), p)?;
        let x0 = v.admissible_minimum()?.location;
        let series = v.taylor_coeffs(&x0, 10)?;
        println!("{v} about x0 = -{r}i");
        for (j, c) in series.coeffs().iter().enumerate() {
            println!("  V_{j:<2} = {:>28} {:>28}i", to_decimal(c.real(), 20), to_decimal(c.imag(), 20));
        }
    }
    Ok(())
}
