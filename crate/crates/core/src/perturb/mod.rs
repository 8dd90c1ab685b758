//! Rayleigh–Schrödinger perturbation theory about the admissible minimum.
//!
//! With `x = x0 + b s` and `b = V2^(-1/4)` the Hamiltonian becomes
//! `sqrt(V2) (-d^2/ds^2 + s^2 + sum_j c_j b^j s^(j+2))`, so every level is
//! `E = V0 + sqrt(V2) sum_j epsilon_j b^j` with `epsilon_0 = 2v + 1`.
//! The corrections are computed order by order on coefficient vectors in the
//! oscillator basis. A polynomial perturbation reaches only finitely many
//! levels per order, so a finite cutoff reproduces every coefficient exactly.

mod curve;
mod scaled;
mod series;

pub use curve::{error_curve, ErrorCurve, ErrorRow};
pub use scaled::ScaledProblem;
pub use series::{exact_cutoff, rs_coefficients, rs_coefficients_with_cutoff, PerturbationSeries};

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal};
use rug::ops::Pow;
use crate::potentials::Potential;

/// Where an energy value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EstimateKind {
    Harmonic,
    Partial(usize),
    Rpm,
}

#[derive(Clone, Debug)]
pub struct EnergyEstimate {
    pub value: BigComplex,
    pub kind: EstimateKind,
    pub error_bar: Option<BigReal>,
}

impl EnergyEstimate {
    pub fn rpm(value: BigComplex, error_bar: Option<BigReal>) -> Self {
        EnergyEstimate { value, kind: EstimateKind::Rpm, error_bar }
    }
}

/// `E^[N] = V0 + sqrt(V2) sum_{j<=N} epsilon_j b^j`.
pub fn energy_partial_sum(sp: &ScaledProblem, series: &PerturbationSeries, n: usize) -> Result<EnergyEstimate> {
    if n > series.order() {
        return Err(Error::InvalidInput(format!("partial sum of order {n} from a series of order {}", series.order())));
    }
    let prec = sp.precision();
    let mut sum = prec.zero();
    let mut bj = prec.real(1);
    for e in &series.coeffs[..=n] {
        sum += BigComplex::with_val(prec.bits(), e * &bj);
        bj *= &sp.b;
    }
    let value = BigComplex::with_val(prec.bits(), &sp.v0 + sum * sp.sqrt_v2());
    let kind = if n == 0 { EstimateKind::Harmonic } else { EstimateKind::Partial(n) };
    Ok(EnergyEstimate { value, kind, error_bar: None })
}

/// Every partial sum `E^[0..=N]` of level `v` at the admissible minimum.
pub fn partial_sums(potential: &Potential, v: u32, n: usize) -> Result<Vec<EnergyEstimate>> {
    let sp = ScaledProblem::at_minimum(potential, n.max(1))?;
    let series = rs_coefficients(&sp, v, n)?;
    (0..=n).map(|k| energy_partial_sum(&sp, &series, k)).collect()
}

/// Partial sum at the order where the series terms are smallest, with the
/// size of the last included term as its error bar, and the matching
/// truncation of `f0 = -psi'(x0)/psi(x0)` (ground state only).
pub fn optimal_truncation(potential: &Potential, v: u32, n_max: usize) -> Result<(EnergyEstimate, Option<BigComplex>)> {
    let sp = ScaledProblem::at_minimum(potential, n_max.max(1))?;
    let series = rs_coefficients(&sp, v, n_max)?;
    let prec = sp.precision();
    let term = |j: usize| {
        let bj = BigReal::with_val(prec.bits(), (&sp.b).pow(j as u32));
        crate::numerics::abs(&series.coeffs[j]) * bj
    };
    // Smallest non-vanishing even term past the leading order.
    let best = (2..=n_max)
        .step_by(2)
        .filter(|&j| !series.vanishes(j))
        .min_by(|&a, &b| term(a).partial_cmp(&term(b)).expect("finite terms"))
        .unwrap_or(0);
    let mut estimate = energy_partial_sum(&sp, &series, best)?;
    estimate.error_bar = Some(BigReal::with_val(prec.bits(), term(best) * crate::numerics::abs(&sp.sqrt_v2())));
    let f0 = series.log_derivative.as_ref().map(|l| {
        let mut acc = prec.zero();
        let mut bj = prec.real(1);
        for lk in &l[1..=best.max(1)] {
            acc += BigComplex::with_val(prec.bits(), lk * &bj);
            bj *= &sp.b;
        }
        acc
    });
    Ok((estimate, f0))
}
