//! Complex stationary points of each family and the one that anchors the
//! spectrum.

use spiked_spectra::numerics::{to_decimal, Precision};
use spiked_spectra::potentials::Potential;

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    let models = [
        Potential::shifted_sextic(p.real(100), p)?,
        Potential::integer(3, 3, p.real(1), p)?,
        Potential::alpha_beta(p.real(0.5), p.real(0.25), p.real(10), p)?,
    ];
    for v in &models {
        let points = v.stationary_points()?;
        println!("{v}: {} stationary points", points.len());
        for sp in &points {
            println!(
                "  x = {:>14} {:>14}i   V'' = {:>12} {:>12}i{}",
                to_decimal(sp.location.real(), 10),
                to_decimal(sp.location.imag(), 10),
                to_decimal(sp.second_derivative.real(), 8),
                to_decimal(sp.second_derivative.imag(), 8),
                if sp.admissible { "   <- admissible" } else { "" }
            );
        }
    }
    Ok(())
}
