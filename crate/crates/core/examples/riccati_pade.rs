//! Riccati–Padé quantization: the general (E, f0) system about -iR along a
//! Hankel-size ladder, and the regularized system for n = 1, which is exact
//! at D = 2 when m = 1.

use spiked_spectra::numerics::{to_decimal, Precision};
use spiked_spectra::potentials::Potential;
use spiked_spectra::rpm::{solve_regularized, track_level, HankelVariant, RpmProblem, TrackOptions};

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    let v = Potential::integer(1, 3, p.real(5), p)?;
    let mut opts = TrackOptions::default();
    opts.solver.stop_below = Some(p.real(1e-24));
    let report = track_level(&v, HankelVariant::General, 0, &opts)?;
    println!("{v}, general variant about x0 = -5i");
    for sol in &report.ladder.solutions {
        println!(
            "  D = {:>2}  E = {:>30}  err = {:>9}",
            sol.dim,
            to_decimal(sol.energy.real(), 26),
            sol.error_estimate.as_ref().map(|e| format!("{:.1e}", e.to_f64())).unwrap_or_default()
        );
    }

    let r = 2u32;
    let v = Potential::integer(1, 1, p.real(r), p)?;
    let guess = RpmProblem::harmonic_seed(&v, 0)?.energy;
    let sol = solve_regularized(1, &v.lambda(), 2, 0, &guess)?;
    let exact = p.real(2) - p.real(4 * r.pow(4) + 1).sqrt();
    println!("{v}, regularized variant, D = 2");
    println!("  E     = {}", to_decimal(sol.energy.real(), 30));
    println!("  exact = {}", to_decimal(&exact, 30));
    Ok(())
}
