//! Harmonic, optimally truncated perturbative and Riccati–Padé energies side
//! by side, with the imaginary part of the converged root.

use spiked_spectra::cli::{ground_state, LadderArgs};
use spiked_spectra::numerics::{abs, to_decimal, BigComplex, Precision};
use spiked_spectra::perturb::optimal_truncation;
use spiked_spectra::potentials::Potential;
use spiked_spectra::rpm::{HankelVariant, RpmProblem};

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    let models = [
        Potential::integer(1, 3, p.real(20), p)?,
        Potential::integer(1, 1, p.real(2), p)?,
        Potential::shifted_sextic(p.real(100), p)?,
    ];
    for v in &models {
        let harm = RpmProblem::harmonic_seed(v, 0)?.energy;
        let (pert, _) = optimal_truncation(v, 0, 40)?;
        let rpm = ground_state(v, HankelVariant::General, 0, &LadderArgs::default())?;
        let best = rpm.ladder.best().expect("non-empty ladder");
        let gap = |z: &BigComplex| abs(&BigComplex::with_val(p.bits(), z - &best.energy)).to_f64();
        println!("{v}");
        println!("  harmonic      {:>30}  gap {:.1e}", to_decimal(harm.real(), 25), gap(&harm));
        println!("  perturbative  {:>30}  gap {:.1e} ({:?})", to_decimal(pert.value.real(), 25), gap(&pert.value), pert.kind);
        println!(
            "  rpm (D = {:>2}) {:>30}  |Im E| = {:.1e}, err = {:.1e}",
            best.dim,
            to_decimal(best.energy.real(), 25),
            best.energy.imag().to_f64().abs(),
            best.error_estimate.as_ref().map(|e| e.to_f64()).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
