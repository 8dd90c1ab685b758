//! Perturbation coefficients about the complex minimum. Odd orders vanish,
//! even orders are real, and for m = n = 1 every fourth order vanishes too.

use spiked_spectra::numerics::{to_decimal, Precision};
use spiked_spectra::perturb::{energy_partial_sum, optimal_truncation, rs_coefficients, ScaledProblem};
use spiked_spectra::potentials::Potential;

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    let n = 16;
    for (m, k) in [(1, 1), (1, 3)] {
        let v = Potential::integer(m, k, p.real(2), p)?;
        let sp = ScaledProblem::at_minimum(&v, n)?;
        let series = rs_coefficients(&sp, 0, n)?;
        series.check_reality()?;
        println!("{v}");
        for j in (0..=n).step_by(2) {
            let eps = if series.vanishes(j) { "0".to_string() } else { to_decimal(series.coeffs[j].real(), 20) };
            let partial = energy_partial_sum(&sp, &series, j)?;
            println!("  eps_{j:<2} = {eps:>28}   E[{j:>2}] = {}", to_decimal(partial.value.real(), 22));
        }
        let (best, f0) = optimal_truncation(&v, 0, 40)?;
        println!(
            "  optimal truncation {:?}: E = {} +- {:.1e}, f0 = {}i",
            best.kind,
            to_decimal(best.value.real(), 22),
            best.error_bar.map(|e| e.to_f64()).unwrap_or(f64::NAN),
            f0.map(|f| to_decimal(f.imag(), 12)).unwrap_or_default()
        );
    }
    Ok(())
}
