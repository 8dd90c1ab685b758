//! Root selection by continuation from the harmonic limit.
//!
//! The Hankel systems have many roots, and several of them form sequences
//! that converge as `D` grows. The level wanted here is the one connected to
//! the harmonic well at the admissible minimum. It is located where the
//! harmonic estimate is reliable (large well-depth scale) and followed in
//! the scale down to the requested potential.

use super::hankel::HankelVariant;
use super::solve::{Ladder, RpmProblem, Seed, SolverOptions};
use crate::error::{Error, Result};
use crate::numerics::{abs, BigComplex, BigReal};
use crate::potentials::Potential;

/// Relative accuracy of intermediate roots on the continuation path.
const TRACKING_BITS: i32 = 40;
/// Largest accepted change of a continuation step relative to its prediction,
/// in units of the local harmonic half spacing for `E`.
const MAX_CORRECTION: f64 = 0.1;
/// Newton budget per continuation step; good predictions need a handful.
const TRACKING_ITER: usize = 30;
/// Hankel-size switches allowed on one continuation path.
const MAX_SWITCHES: usize = 8;

#[derive(Clone, Debug)]
pub struct TrackOptions {
    /// Scale at or above which the harmonic seed is trusted.
    pub anchor_scale: f64,
    /// Hankel size used while following the root in the scale.
    pub tracking_dim: usize,
    /// Hankel displacement `d`.
    pub displacement: usize,
    /// Largest `D` of the final ladder.
    pub max_dim: usize,
    /// Smallest relative continuation step before giving up.
    pub min_step: f64,
    pub solver: SolverOptions,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            anchor_scale: 2.0,
            tracking_dim: 12,
            displacement: 0,
            max_dim: 40,
            min_step: 1e-3,
            solver: SolverOptions::default(),
        }
    }
}

/// Outcome of [`track_level`].
#[derive(Clone, Debug)]
pub struct TrackReport {
    /// Final ladder at the requested potential.
    pub ladder: Ladder,
    /// Continuation steps taken in the scale (zero when no continuation ran).
    pub steps: usize,
    /// Hankel size at the end of the continuation.
    pub tracking_dim: usize,
}

fn problem_for(potential: &Potential, variant: HankelVariant) -> Result<RpmProblem> {
    match variant {
        HankelVariant::General => RpmProblem::general(potential),
        HankelVariant::Regularized => RpmProblem::regularized(potential),
    }
}

/// `sqrt(V2)/2`, a quarter of the harmonic level spacing.
fn half_spacing(potential: &Potential) -> Result<BigReal> {
    let prec = potential.precision();
    let x0 = potential.admissible_minimum()?.location;
    let t = potential.taylor_coeffs(&x0, 2)?;
    let sqrt_v2 = BigComplex::with_val(prec.bits(), t.coeffs()[2].sqrt_ref());
    Ok(abs(&sqrt_v2) / 2u32)
}

fn harmonic(potential: &Potential) -> Result<BigComplex> {
    Ok(RpmProblem::harmonic_seed(potential, 0)?.energy)
}

fn offset(a: &BigComplex, b: &BigComplex) -> BigComplex {
    BigComplex::with_val(a.prec().0, a - b)
}

/// Energy of level `v` of `potential` by the Riccati–Padé method, following
/// the root from the harmonic seed at the anchor scale.
pub fn track_level(potential: &Potential, variant: HankelVariant, v: u32, opts: &TrackOptions) -> Result<TrackReport> {
    let prec = potential.precision();
    let target = potential.well_depth_scale();
    let anchor_scale = prec.real(opts.anchor_scale);
    let anchored = target >= anchor_scale;
    let anchor = if anchored { potential.clone() } else { potential.rescaled(&anchor_scale)? };
    let d = opts.displacement;
    let mut dim = opts.tracking_dim.max(2);

    let harmonic = RpmProblem::harmonic_seed(&anchor, v)?;
    let mut solver = opts.solver.clone();
    solver.trust_radius = Some(half_spacing(&anchor)?);
    let start = problem_for(&anchor, variant)?.converge(d, 2..=dim, &harmonic, &solver)?;
    let first = start.last().ok_or_else(|| Error::Divergence {
        iterations: solver.max_iter,
        last_step: "no Hankel root near the harmonic seed".into(),
        last_iterate: vec![harmonic.energy.to_string_radix(10, Some(20))],
    })?;
    dim = first.dim;
    let mut seed = Seed::from(first);

    let mut steps = 0;
    if !anchored {
        (seed, dim, steps) = continue_in_scale(&anchor, potential, variant, seed, dim, opts)?;
    }

    let mut solver = opts.solver.clone();
    solver.trust_radius = Some(half_spacing(potential)? / 4u32);
    let problem = problem_for(potential, variant)?;
    let ladder = problem.converge(d, dim..=opts.max_dim.max(dim + 1), &seed, &solver)?;
    Ok(TrackReport { ladder, steps, tracking_dim: dim })
}

/// Follow a root at fixed `D` from `from` to `to` in the well-depth scale,
/// moving to a larger `D` where a neighbouring root crosses the path.
fn continue_in_scale(
    from: &Potential,
    to: &Potential,
    variant: HankelVariant,
    seed: Seed,
    mut dim: usize,
    opts: &TrackOptions,
) -> Result<(Seed, usize, usize)> {
    let prec = from.precision();
    let target = to.well_depth_scale();
    let mut path: Vec<(BigReal, Seed)> = vec![(from.well_depth_scale(), seed)];
    let mut frac = 0.01f64;
    let mut steps = 0;
    let mut switches = 0;
    let d = opts.displacement;
    loop {
        let (s1, p1) = path.last().expect("path starts non-empty").clone();
        if s1 <= target {
            return Ok((p1, dim, steps));
        }
        let s_next = prec.real(&s1 * (1.0 - frac)).max(&target).clone();
        let potential = to.rescaled(&s_next)?;
        // Secant predictor on the offset from the harmonic estimate, which
        // varies far more slowly than the energy itself.
        let h_next = harmonic(&potential)?;
        let r1 = offset(&p1.energy, &harmonic(&to.rescaled(&s1)?)?);
        let predicted = match path.len() {
            1 => Seed { energy: BigComplex::with_val(prec.bits(), &r1 + &h_next), f0: p1.f0.clone() },
            n => {
                let (s0, p0) = &path[n - 2];
                let t = prec.real(&s_next - &s1) / prec.real(&s1 - s0);
                let r0 = offset(&p0.energy, &harmonic(&to.rescaled(s0)?)?);
                Seed {
                    energy: BigComplex::with_val(prec.bits(), &r1 + offset(&r1, &r0) * &t) + &h_next,
                    f0: BigComplex::with_val(prec.bits(), &p1.f0 + offset(&p1.f0, &p0.f0) * &t),
                }
            }
        };
        let spacing = half_spacing(&potential)?;
        let mut solver = opts.solver.clone();
        solver.trust_radius = Some(BigReal::with_val(prec.bits(), &spacing / 2u32));
        solver.step_tol = Some(prec.pow2_neg(TRACKING_BITS));
        solver.max_iter = solver.max_iter.min(TRACKING_ITER);
        let problem = problem_for(&potential, variant)?;
        steps += 1;
        let res = problem.solve(dim, d, &predicted, &solver).and_then(|sol| {
            // Accept only small corrections to the prediction in both unknowns.
            let next = Seed::from(&sol);
            let de = abs(&offset(&next.energy, &predicted.energy)) / &spacing;
            let df = abs(&offset(&next.f0, &predicted.f0));
            if de > MAX_CORRECTION || df > MAX_CORRECTION {
                return Err(Error::OutsideTrustRegion { radius: "prediction".into(), iterations: sol.iterations });
            }
            Ok((next, sol.iterations, de.to_f64().max(df.to_f64())))
        });
        match res {
            Ok((next, iterations, correction)) => {
                if correction < MAX_CORRECTION / 5.0 && iterations <= 10 {
                    frac = (frac * 1.5).min(0.1);
                } else if correction > MAX_CORRECTION / 2.0 {
                    frac *= 0.7;
                }
                path.push((s_next, next));
            }
            Err(_) => {
                frac /= 2.0;
                if frac < opts.min_step {
                    // A neighbouring root crossing the path at this D: move
                    // to the next size at the current scale and carry on.
                    let here = problem_for(&to.rescaled(&s1)?, variant)?;
                    let mut solver = opts.solver.clone();
                    solver.trust_radius = Some(half_spacing(&potential)? / 8u32);
                    let resumed = (1..=4).find_map(|k| here.solve(dim + k, d, &p1, &solver).ok().map(|s| (k, s)));
                    match resumed {
                        Some((k, sol)) if switches < MAX_SWITCHES => {
                            dim += k;
                            switches += 1;
                            frac = 0.02;
                            path = vec![(s1, Seed::from(&sol))];
                        }
                        _ => {
                            return Err(Error::Divergence {
                                iterations: steps,
                                last_step: format!("continuation stalled at scale {}", s1.to_string_radix(10, Some(8))),
                                last_iterate: vec![p1.energy.to_string_radix(10, Some(20))],
                            })
                        }
                    }
                }
            }
        }
    }
}
