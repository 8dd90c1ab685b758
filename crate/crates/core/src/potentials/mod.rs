//! The three spiked-oscillator families, their complex stationary points and
//! exact Taylor expansions about complex centres.
//!
//! Every potential is stored as a short sum of power-law terms. Integer
//! powers act on `x` directly. Non-integer powers act on `ix` through the
//! principal logarithm, `(ix)^p = exp(p Log(ix))`, which puts the cut on the
//! upper imaginary axis of `x` and keeps the lower half-plane single-valued.

mod family;
mod profile;
mod stationary;

pub use family::{Family, Potential};
pub use profile::{profile_csv, ProfileRow, ProfileShift, ShiftedLine};
pub use stationary::StationaryPoint;
