//! Harmonic approximation V0 + sqrt(V2) at the complex minimum, against the
//! bundled reference energies. The relative gap shrinks as R grows.

use spiked_spectra::cli::reference::table1;
use spiked_spectra::numerics::{to_decimal, Precision};
use spiked_spectra::potentials::Potential;
use spiked_spectra::rpm::RpmProblem;

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    println!("{:>3} {:>3} {:>4} {:>26} {:>26} {:>10}", "m", "n", "R", "harmonic", "reference", "rel gap");
    for e in table1() {
        let v = Potential::integer(e.m, e.n, p.parse_real(&e.r)?, p)?;
        let harm = RpmProblem::harmonic_seed(&v, 0)?.energy;
        let target = p.parse_real(&e.energy)?;
        let gap = ((harm.real().clone() - &target) / &target).abs();
        println!(
            "{:>3} {:>3} {:>4} {:>26} {:>26} {:>10.2e}",
            e.m,
            e.n,
            e.r,
            to_decimal(harm.real(), 20),
            e.energy,
            gap.to_f64()
        );
    }
    Ok(())
}
