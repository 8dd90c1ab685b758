use super::hankel::{hankel_matrix, HankelSystem, HankelVariant, Parity};
use super::riccati::{regularized_coeffs, riccati_from_taylor, Sigma, SigmaBranch};
use crate::error::{Error, Result};
use crate::numerics::{abs, newton_solve, BigComplex, BigReal, NewtonOptions, Precision, TruncatedSeries};
use crate::potentials::Potential;

/// Agreement, in bits, between working- and doubled-precision determinants
/// next to a root for the root to count as resolved.
const INFORMATIVE_BITS: i32 = 20;

/// A converged root of a Hankel system.
#[derive(Clone, Debug)]
pub struct RpmSolution {
    pub energy: BigComplex,
    /// `-psi'(x0)/psi(x0)`; general variant only.
    pub f0: Option<BigComplex>,
    pub dim: usize,
    pub displacement: usize,
    /// Largest `|det| / max|entry|^D` over the conditions at the root.
    pub residual_norm: BigReal,
    /// `|E_D - E_{D-1}|` when the solution comes from a ladder.
    pub error_estimate: Option<BigReal>,
    pub precision: Precision,
    pub iterations: usize,
}

/// A quantization problem that can be solved at any Hankel size.
#[derive(Clone, Debug)]
pub enum RpmProblem {
    /// Two unknowns `(E, f0)` about a regular centre `x0`.
    General { potential: Potential, x0: BigComplex },
    /// One unknown `E` for `x^(2m) + lambda/x^2`, expanded about the origin.
    Regularized { m: u32, lambda: BigReal, branch: SigmaBranch },
}

/// Newton seed for one solve.
#[derive(Clone, Debug)]
pub struct Seed {
    pub energy: BigComplex,
    pub f0: BigComplex,
}

impl From<&RpmSolution> for Seed {
    fn from(sol: &RpmSolution) -> Self {
        Seed { energy: sol.energy.clone(), f0: sol.f0.clone().unwrap_or_else(|| sol.precision.zero()) }
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub max_iter: usize,
    /// Upper bound for automatic precision escalation.
    pub max_precision: Precision,
    /// Reject roots farther than this from the seed.
    pub trust_radius: Option<BigReal>,
    /// Relative change below which a ladder counts as settled.
    pub stop_below: Option<BigReal>,
    /// Relative Newton step that counts as converged; `2^(-bits/2)` when absent.
    pub step_tol: Option<BigReal>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_iter: 80, max_precision: Precision::new(512).expect("valid"), trust_radius: None, stop_below: None, step_tol: None }
    }
}

impl RpmProblem {
    /// General problem about the default centre `x0 = -i|x0|` of the admissible minimum.
    pub fn general(potential: &Potential) -> Result<Self> {
        let x0 = potential.admissible_minimum()?.location;
        Ok(RpmProblem::General { potential: potential.clone(), x0 })
    }

    /// Regularized problem for the `n = 1` members of the integer family.
    pub fn regularized(potential: &Potential) -> Result<Self> {
        match potential.family() {
            crate::potentials::Family::Integer { m, n: 1, .. } => Ok(RpmProblem::Regularized {
                m: *m,
                lambda: potential.lambda(),
                branch: SigmaBranch::Minus,
            }),
            _ => Err(Error::InvalidInput(format!("{potential}: the regularized variant needs x^(2m) + lambda/x^2"))),
        }
    }

    pub fn precision(&self) -> Precision {
        match self {
            RpmProblem::General { potential, .. } => potential.precision(),
            RpmProblem::Regularized { lambda, .. } => Precision::new(lambda.prec()).expect("valid"),
        }
    }

    pub fn variant(&self) -> HankelVariant {
        match self {
            RpmProblem::General { .. } => HankelVariant::General,
            RpmProblem::Regularized { .. } => HankelVariant::Regularized,
        }
    }

    /// The same problem at another precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        match self {
            RpmProblem::General { potential, x0 } => RpmProblem::General {
                potential: potential.with_precision(prec),
                x0: prec.complex(x0),
            },
            RpmProblem::Regularized { m, lambda, branch } => RpmProblem::Regularized {
                m: *m,
                lambda: prec.real(lambda),
                branch: *branch,
            },
        }
    }

    /// Seed from the harmonic approximation `V0 + (2v+1) sqrt(V2)` at the
    /// admissible minimum, with `f0 = 0`.
    pub fn harmonic_seed(potential: &Potential, v: u32) -> Result<Seed> {
        let prec = potential.precision();
        let x0 = potential.admissible_minimum()?.location;
        let t = potential.taylor_coeffs(&x0, 2)?;
        let c = t.coeffs();
        let sqrt_v2 = BigComplex::with_val(prec.bits(), c[2].sqrt_ref());
        let energy = BigComplex::with_val(prec.bits(), &c[0] + sqrt_v2 * (2 * v + 1));
        Ok(Seed { energy, f0: prec.zero() })
    }

    /// Solve at fixed `(D, d)` from `seed`, escalating precision when the
    /// determinants hit the rounding floor.
    pub fn solve(&self, dim: usize, d: usize, seed: &Seed, opts: &SolverOptions) -> Result<RpmSolution> {
        let mut problem = self.clone();
        loop {
            let prec = problem.precision();
            match problem.solve_once(dim, d, seed, opts) {
                Err(Error::PrecisionLimited { .. }) | Err(Error::Divergence { .. })
                    if prec.doubled() <= opts.max_precision =>
                {
                    problem = problem.with_precision(prec.doubled());
                }
                other => return other,
            }
        }
    }

    fn solve_once(&self, dim: usize, d: usize, seed: &Seed, opts: &SolverOptions) -> Result<RpmSolution> {
        let system = HankelSystem::new(dim, d, self.variant())?;
        let prec = self.precision();
        let evaluator = Evaluator::new(self, system.coefficient_demand())?;
        let general = matches!(self, RpmProblem::General { .. });
        let mut guess = vec![prec.complex(&seed.energy)];
        if general {
            guess.push(prec.complex(&seed.f0));
        }
        let mut newton = NewtonOptions::new(prec, prec.real(0), opts.max_iter);
        newton.step_tol = match &opts.step_tol {
            Some(t) => prec.real(t),
            None => prec.pow2_neg((prec.bits() / 2) as i32),
        };
        newton.trust_radius = opts.trust_radius.clone();

        // Locate the root on the PT-symmetric slice (E real, f0 imaginary),
        // where both conditions are real; this keeps Newton away from the
        // many complex roots of the determinants.
        if self.is_pt_symmetric() {
            let phase = even_phase(prec, dim);
            let to_full = |u: &[BigComplex]| -> Vec<BigComplex> {
                let mut x = vec![prec.complex(u[0].real())];
                if general {
                    x.push(prec.complex((0, u[1].real())));
                }
                x
            };
            let start: Vec<BigComplex> = guess
                .iter()
                .enumerate()
                .map(|(k, g)| prec.complex(if k == 0 { g.real() } else { g.imag() }))
                .collect();
            let scales = evaluator.scales(&to_full(&start), &system)?;
            let residual = |u: &[BigComplex]| -> Result<Vec<BigComplex>> {
                let dets = evaluator.determinants(&to_full(u), &system)?;
                Ok(dets
                    .into_iter()
                    .zip(&scales)
                    .enumerate()
                    .map(|(k, ((v, _), s))| {
                        let v = if general && k == 0 { v * &phase } else { v };
                        prec.complex(v.real() / s)
                    })
                    .collect())
            };
            let out = newton_solve(residual, &start, &newton)?;
            guess = to_full(&out.root);
        }

        // Unrestricted complex polish from the located root.
        let scales = evaluator.scales(&guess, &system)?;
        let residual = |x: &[BigComplex]| -> Result<Vec<BigComplex>> {
            let dets = evaluator.determinants(x, &system)?;
            Ok(dets.into_iter().zip(&scales).map(|((v, _), s)| v / s).collect())
        };
        let out = newton_solve(residual, &guess, &newton)?;

        self.check_informative(&evaluator, &out.root, &system)?;
        let dets = evaluator.determinants(&out.root, &system)?;
        let residual_norm = dets.into_iter().map(|(_, rel)| rel).fold(prec.real(0), |a, b| if b > a { b } else { a });
        let mut root = out.root.into_iter();
        let energy = root.next().expect("one unknown at least");
        Ok(RpmSolution {
            energy,
            f0: root.next(),
            dim,
            displacement: d,
            residual_norm,
            error_estimate: None,
            precision: prec,
            iterations: out.iterations,
        })
    }

    /// Near a genuine root the determinants grow linearly away from it. Step
    /// off the root in `E` and compare the determinants with a doubled-precision
    /// evaluation: when they disagree, the matrix is numerically rank-deficient
    /// and the "root" is rounding noise.
    fn check_informative(&self, evaluator: &Evaluator, root: &[BigComplex], system: &HankelSystem) -> Result<()> {
        let prec = self.precision();
        let fine = self.with_precision(prec.doubled());
        let fine_eval = Evaluator::new(&fine, system.coefficient_demand())?;
        let e = &root[0];
        let delta = BigReal::with_val(prec.bits(), abs(e).max(&prec.real(1))) >> (prec.bits() / 4) as i32;
        let mut probe: Vec<BigComplex> = root.to_vec();
        probe[0] = BigComplex::with_val(prec.bits(), e + &delta);
        let fine_probe: Vec<BigComplex> = probe.iter().map(|z| prec.doubled().complex(z)).collect();
        let coarse = evaluator.determinants(&probe, system)?;
        let exact = fine_eval.determinants(&fine_probe, system)?;
        let tol = prec.pow2_neg(INFORMATIVE_BITS);
        for ((c, _), (f, _)) in coarse.iter().zip(&exact) {
            let f_abs = abs(f);
            let gap = abs(&BigComplex::with_val(prec.doubled().bits(), f - c));
            if f_abs.is_zero() || gap > BigReal::with_val(prec.bits(), &f_abs * &tol) {
                return Err(Error::PrecisionLimited { bits: prec.bits() });
            }
        }
        Ok(())
    }

    /// True when the expansion centre sits on the negative imaginary axis,
    /// where every family here obeys `V(-iR + s)* = V(-iR - s*)`.
    fn is_pt_symmetric(&self) -> bool {
        match self {
            RpmProblem::General { x0, .. } => x0.real().is_zero() && x0.imag().is_sign_negative(),
            RpmProblem::Regularized { .. } => true,
        }
    }
}

/// `(-i)^D`: the even-parity entries are imaginary on the symmetric slice.
fn even_phase(prec: Precision, dim: usize) -> BigComplex {
    match dim % 4 {
        0 => prec.complex(1),
        1 => prec.complex((0, -1)),
        2 => prec.complex(-1),
        _ => prec.complex((0, 1)),
    }
}

/// Precomputed pieces for repeated determinant evaluation.
enum Evaluator {
    General { taylor: TruncatedSeries, order: usize },
    Regularized { m: u32, sigma: Sigma, order: usize },
}

impl Evaluator {
    fn new(problem: &RpmProblem, order: usize) -> Result<Self> {
        Ok(match problem {
            RpmProblem::General { potential, x0 } => Evaluator::General { taylor: potential.taylor_coeffs(x0, order)?, order },
            RpmProblem::Regularized { m, lambda, branch } => Evaluator::Regularized {
                m: *m,
                sigma: Sigma::new(lambda.clone(), *branch)?,
                order,
            },
        })
    }

    /// `(det, |det| / max|entry|^D)` for every condition of the system.
    fn determinants(&self, x: &[BigComplex], system: &HankelSystem) -> Result<Vec<(BigComplex, BigReal)>> {
        let (dim, d) = (system.dim, system.displacement);
        match self {
            Evaluator::General { taylor, order } => {
                let rc = riccati_from_taylor(taylor, &x[0], &x[1], *order);
                [Parity::Even, Parity::Odd]
                    .into_iter()
                    .map(|parity| {
                        let det = hankel_matrix(&rc, dim, d, parity)?.determinant();
                        let rel = det.relative(dim);
                        Ok((det.value, rel))
                    })
                    .collect()
            }
            Evaluator::Regularized { m, sigma, order } => {
                let rc = regularized_coeffs(*m, sigma, &x[0], *order);
                let det = hankel_matrix(&rc, dim, d, Parity::Plain)?.determinant();
                let rel = det.relative(dim);
                Ok(vec![(det.value, rel)])
            }
        }
    }

    fn scales(&self, x: &[BigComplex], system: &HankelSystem) -> Result<Vec<BigReal>> {
        let dets = self.determinants(x, system)?;
        Ok(dets
            .into_iter()
            .map(|(v, rel)| {
                let a = abs(&v);
                if a.is_zero() || rel.is_zero() {
                    BigReal::with_val(a.prec(), 1)
                } else {
                    a / rel
                }
            })
            .collect())
    }
}

/// Solutions across a range of Hankel sizes.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub solutions: Vec<RpmSolution>,
    /// `(D, reason)` for sizes that failed; the ladder continues past them.
    pub failures: Vec<(usize, String)>,
}

impl Ladder {
    pub fn last(&self) -> Option<&RpmSolution> {
        self.solutions.last()
    }

    /// Best estimate: the largest `D` reached. Each size is seeded by the
    /// previous root, so the last rung carries the most information.
    pub fn best(&self) -> Option<&RpmSolution> {
        self.solutions.last()
    }
}

impl RpmSolution {
    /// Significant digits backed by the ladder error estimate, capped by the
    /// working precision. `None` outside a ladder.
    pub fn digits_claimed(&self) -> Option<u32> {
        let est = self.error_estimate.as_ref()?;
        let cap = self.precision.decimal_digits().saturating_sub(2);
        let scale = abs(&self.energy);
        if est.is_zero() || scale.is_zero() {
            return Some(if est.is_zero() { cap } else { 0 });
        }
        let rel = BigReal::with_val(est.prec(), est / &scale).log10().to_f64();
        Some((-rel).floor().clamp(0.0, cap as f64) as u32)
    }
}

/// Newton solution of the paired even/odd Hankel conditions in `(E, f0)`
/// about `x0`. Without a guess the harmonic estimate and `f0 = 0` are used.
pub fn solve_general(
    potential: &Potential,
    x0: &BigComplex,
    dim: usize,
    d: usize,
    guess: Option<&Seed>,
) -> Result<RpmSolution> {
    let seed = match guess {
        Some(s) => s.clone(),
        None => RpmProblem::harmonic_seed(potential, 0)?,
    };
    let problem = RpmProblem::General { potential: potential.clone(), x0: x0.clone() };
    problem.solve(dim, d, &seed, &SolverOptions::default())
}

/// Scalar Newton solution of the plain Hankel condition for
/// `x^(2m) + lambda/x^2`, on the `sigma < 0` branch.
pub fn solve_regularized(m: u32, lambda: &BigReal, dim: usize, d: usize, guess: &BigComplex) -> Result<RpmSolution> {
    if m % 2 == 0 {
        return Err(Error::InvalidInput(format!("m = {m} must be odd")));
    }
    if *lambda <= 0 {
        return Err(Error::InvalidInput("lambda must be positive".into()));
    }
    let prec = Precision::new(lambda.prec())?;
    let problem = RpmProblem::Regularized { m, lambda: lambda.clone(), branch: SigmaBranch::Minus };
    problem.solve(dim, d, &Seed { energy: prec.complex(guess), f0: prec.zero() }, &SolverOptions::default())
}

impl RpmProblem {
    /// Solve for `D = dims.start()..=dims.end()`, seeding each size with the
    /// previous root.
    ///
    /// With `opts.trust_radius = Some(r)` each step may move at most
    /// `min(r, 8 |E_D - E_D'|)` from its seed, where `D'` precedes `D`; this
    /// keeps the ladder on one root. With `opts.stop_below = Some(t)` the
    /// ladder stops once two successive changes fall below `t |E|`.
    pub fn converge(
        &self,
        d: usize,
        dims: std::ops::RangeInclusive<usize>,
        seed: &Seed,
        opts: &SolverOptions,
    ) -> Result<Ladder> {
        if dims.end() <= dims.start() {
            return Err(Error::InvalidInput("a ladder needs D_max >= D_min + 1".into()));
        }
        let mut seed = seed.clone();
        let mut solutions: Vec<RpmSolution> = Vec::new();
        let mut failures = Vec::new();
        let mut quiet = 0;
        for dim in dims {
            let mut step_opts = opts.clone();
            if let (Some(r), Some(est)) = (&opts.trust_radius, solutions.last().and_then(|s| s.error_estimate.clone())) {
                let floor = BigReal::with_val(r.prec(), r >> (r.prec() / 2) as i32);
                let cap = BigReal::with_val(r.prec(), &est * 8u32).max(&floor).min(r);
                step_opts.trust_radius = Some(cap);
            }
            match self.solve(dim, d, &seed, &step_opts) {
                Ok(mut sol) => {
                    if let Some(prev) = solutions.last() {
                        let diff = BigComplex::with_val(sol.precision.bits(), &sol.energy - &prev.energy);
                        sol.error_estimate = Some(abs(&diff));
                    }
                    seed = Seed {
                        energy: sol.energy.clone(),
                        f0: sol.f0.clone().unwrap_or_else(|| sol.precision.zero()),
                    };
                    let settled = match (&opts.stop_below, &sol.error_estimate) {
                        (Some(t), Some(est)) => *est <= BigReal::with_val(est.prec(), abs(&sol.energy) * t),
                        _ => false,
                    };
                    quiet = if settled { quiet + 1 } else { 0 };
                    solutions.push(sol);
                    if quiet >= 2 {
                        break;
                    }
                }
                Err(e) => failures.push((dim, e.to_string())),
            }
        }
        Ok(Ladder { solutions, failures })
    }
}
