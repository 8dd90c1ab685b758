//! Error of the perturbative partial sums against Riccati–Padé references at
//! R = 2, one CSV per model in the directory given as the first argument.

use std::path::PathBuf;

use spiked_spectra::cli::{ground_state, LadderArgs, FIG2_MODELS};
use spiked_spectra::numerics::Precision;
use spiked_spectra::perturb::{error_curve, EnergyEstimate};
use spiked_spectra::potentials::Potential;
use spiked_spectra::rpm::HankelVariant;

fn main() -> spiked_spectra::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fig2".into()));
    std::fs::create_dir_all(&dir)?;
    let p = Precision::DEFAULT;
    for (m, n) in FIG2_MODELS {
        let v = Potential::integer(m, n, p.real(2), p)?;
        let rpm = ground_state(&v, HankelVariant::General, 0, &LadderArgs::default())?;
        let best = rpm.ladder.best().expect("non-empty ladder");
        let curve = error_curve(&v, 0, 40, &EnergyEstimate::rpm(best.energy.clone(), None))?;
        let path = dir.join(format!("fig2_m{m}_n{n}.csv"));
        std::fs::write(&path, curve.to_csv())?;
        let top = curve.best().expect("non-empty curve");
        println!(
            "{v}: best N = {:>2} (log10 err {:>7.2}), oscillation from N = {} -> {}",
            top.n,
            top.log10_rel_err,
            curve.oscillation_onset().map(|k| k.to_string()).unwrap_or_else(|| "none".into()),
            path.display()
        );
    }
    Ok(())
}
