//! Bound-state energies of PT-symmetric spiked oscillators
//! `V(x) = x^(2m) + lambda / x^(2n)` (and two related families) on the complex
//! line `x = s - i eps`, computed three ways that check one another:
//!
//! * the harmonic approximation about the complex minimum `x0 = -iR`,
//! * Rayleigh–Schrödinger perturbation series about that minimum ([`perturb`]),
//! * the Riccati–Padé method: Hankel determinants of the Taylor coefficients
//!   of the logarithmic derivative of the wavefunction ([`rpm`]).
//!
//! All arithmetic is multiprecision (MPFR/MPC via `rug`).

pub mod cli;
pub mod error;
pub mod numerics;
pub mod perturb;
pub mod potentials;
pub mod rpm;

pub use error::{Error, Result};
