//! Real and imaginary parts of x^2 + lambda/x^6 along x = s - iR for R = 100,
//! shifted so that the well bottom sits at zero. Prints CSV.

use spiked_spectra::numerics::Precision;
use spiked_spectra::potentials::{profile_csv, Potential, ProfileShift, ShiftedLine};

fn main() -> spiked_spectra::Result<()> {
    let p = Precision::DEFAULT;
    let r = p.real(100);
    let v = Potential::integer(1, 3, r.clone(), p)?;
    let line = ShiftedLine::new(r)?;
    let rows = v.shifted_profile(&line, &p.real(-100), &p.real(100), 81, ProfileShift::WellBottom)?;
    print!("{}", profile_csv(&rows, 12));
    Ok(())
}
