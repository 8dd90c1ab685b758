//! Riccati–Padé quantization.
//!
//! The logarithmic derivative `f = -psi'/psi` of a bound state is expanded
//! about a point; its Taylor coefficients follow from the Riccati equation as
//! polynomials in the unknowns. Demanding that `f` be reproduced by a rational
//! approximant turns into vanishing Hankel determinants of those coefficients,
//! whose roots converge to the eigenvalues as the Hankel size `D` grows.

mod hankel;
mod riccati;
mod solve;
mod track;

pub use hankel::{hankel_det, hankel_matrix, hankel_value, HankelSystem, HankelVariant, Parity};
pub use riccati::{
    general_residual, regularized_coeffs, regularized_residual, riccati_coeffs, RiccatiCoefficients, RiccatiVariant,
    Sigma, SigmaBranch,
};
pub use solve::{solve_general, solve_regularized, Ladder, RpmProblem, RpmSolution, Seed, SolverOptions};
pub use track::{track_level, TrackOptions, TrackReport};
