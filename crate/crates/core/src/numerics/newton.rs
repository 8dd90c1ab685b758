use super::{abs, BigComplex, BigReal, Precision};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    /// Converged once `max_i |residual_i| <= tol`.
    pub tol: BigReal,
    /// Also converged once the relative Newton step drops below this.
    pub step_tol: BigReal,
    pub max_iter: usize,
    /// Give up once an iterate strays farther than this from the guess.
    pub trust_radius: Option<BigReal>,
}

impl NewtonOptions {
    /// Residual tolerance `tol`, step tolerance `2^(-3 bits / 4)`.
    pub fn new(prec: Precision, tol: BigReal, max_iter: usize) -> Self {
        NewtonOptions {
            tol,
            step_tol: prec.pow2_neg((prec.bits() * 3 / 4) as i32),
            max_iter,
            trust_radius: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub root: Vec<BigComplex>,
    pub residual_norm: BigReal,
    pub iterations: usize,
}

const MAX_HALVINGS: i32 = 10;
const STRETCH: &[u32] = &[2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64];

fn norm(prec: Precision, v: &[BigComplex]) -> BigReal {
    super::max_abs(prec, v)
}

/// Newton iteration for one or two complex unknowns with a central-difference
/// Jacobian (step `2^(-prec/2)` relative to each coordinate).
///
/// The residual is assumed analytic, so a real-direction difference gives the
/// complex derivative. Each Newton direction is searched along its length:
/// a step that lowers the residual is stretched by factors up to 32 while
/// the residual keeps falling (this recovers fast convergence at multiple
/// or clustered roots), and a step that raises it is halved up to ten times.
pub fn newton_solve<F>(mut residual: F, guess: &[BigComplex], opts: &NewtonOptions) -> Result<NewtonOutcome>
where
    F: FnMut(&[BigComplex]) -> Result<Vec<BigComplex>>,
{
    let k = guess.len();
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidInput(format!("newton_solve handles 1 or 2 unknowns, got {k}")));
    }
    let prec = Precision(guess[0].prec().0);
    let mut x: Vec<BigComplex> = guess.to_vec();
    let mut fx = residual(&x)?;
    check_len(&fx, k)?;
    let mut fnorm = norm(prec, &fx);
    let mut last_step = prec.real(0);

    for iter in 0..opts.max_iter {
        if fnorm <= opts.tol {
            return Ok(NewtonOutcome { root: x, residual_norm: fnorm, iterations: iter });
        }
        let jac = jacobian(&mut residual, &x, &fx, prec)?;
        let step = solve_small(&jac, &fx).ok_or_else(|| Error::SingularJacobian {
            at: x.iter().map(|z| z.to_string_radix(10, Some(20))).collect(),
        })?;
        let step_norm = norm(prec, &step);

        let shifted = |factor: &BigReal| -> Vec<BigComplex> {
            x.iter()
                .zip(&step)
                .map(|(xi, si)| BigComplex::with_val(prec.bits(), xi - BigComplex::with_val(prec.bits(), si * factor)))
                .collect()
        };
        // Natural monotonicity test: the simplified correction J^-1 F(trial)
        // is affine invariant, unlike |F| itself.
        let mut merit = |trial: &[BigComplex]| -> Result<(Vec<BigComplex>, BigReal)> {
            let f = residual(trial)?;
            check_len(&f, k)?;
            let m = solve_small(&jac, &f).map(|d| norm(prec, &d)).unwrap_or_else(|| prec.real(f64::INFINITY));
            Ok((f, m))
        };
        let mut factor = prec.real(1);
        let mut next = shifted(&factor);
        let (mut fnext, mut best) = merit(&next)?;
        let slow = BigReal::with_val(prec.bits(), &step_norm / 10u32);
        if best < step_norm && best > slow {
            // Clustered roots act like one multiple root and shrink plain
            // steps linearly; longer steps restore fast convergence.
            for &m in STRETCH {
                let f = prec.real(m);
                let trial = shifted(&f);
                let (ftrial, n) = merit(&trial)?;
                if n >= best {
                    break;
                }
                (factor, next, fnext, best) = (f, trial, ftrial, n);
            }
        } else if best >= step_norm {
            for halvings in 1..=MAX_HALVINGS {
                let f = prec.pow2_neg(halvings);
                let trial = shifted(&f);
                let (ftrial, n) = merit(&trial)?;
                if n < step_norm {
                    (factor, next, fnext) = (f, trial, ftrial);
                    break;
                }
            }
        }

        let xscale = norm(prec, &x).max(&prec.real(1)).clone();
        let rel_step = BigReal::with_val(prec.bits(), &step_norm / &xscale) * &factor;
        if let Some(radius) = &opts.trust_radius {
            let moved: Vec<BigComplex> = next.iter().zip(guess).map(|(a, b)| BigComplex::with_val(prec.bits(), a - b)).collect();
            if norm(prec, &moved) > *radius {
                return Err(Error::OutsideTrustRegion {
                    radius: radius.to_string_radix(10, Some(6)),
                    iterations: iter + 1,
                });
            }
        }
        x = next;
        fx = fnext;
        fnorm = norm(prec, &fx);
        last_step = rel_step.clone();
        if rel_step <= opts.step_tol || fnorm <= opts.tol {
            return Ok(NewtonOutcome { root: x, residual_norm: fnorm, iterations: iter + 1 });
        }
    }
    Err(Error::Divergence {
        iterations: opts.max_iter,
        last_step: last_step.to_string_radix(10, Some(6)),
        last_iterate: x.iter().map(|z| z.to_string_radix(10, Some(20))).collect(),
    })
}

fn check_len(v: &[BigComplex], k: usize) -> Result<()> {
    if v.len() != k {
        return Err(Error::InvalidInput(format!("residual returned {} components for {k} unknowns", v.len())));
    }
    Ok(())
}

fn jacobian<F>(residual: &mut F, x: &[BigComplex], _fx: &[BigComplex], prec: Precision) -> Result<Vec<Vec<BigComplex>>>
where
    F: FnMut(&[BigComplex]) -> Result<Vec<BigComplex>>,
{
    let k = x.len();
    let mut cols = Vec::with_capacity(k);
    for c in 0..k {
        let mut h = abs(&x[c]).max(&prec.real(1)).clone();
        h >>= (prec.bits() / 2) as i32;
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[c] += &h;
        xm[c] -= &h;
        let fp = residual(&xp)?;
        let fm = residual(&xm)?;
        check_len(&fp, k)?;
        check_len(&fm, k)?;
        let two_h = BigReal::with_val(prec.bits(), &h * 2u32);
        cols.push(
            fp.iter()
                .zip(&fm)
                .map(|(a, b)| BigComplex::with_val(prec.bits(), a - b) / &two_h)
                .collect::<Vec<_>>(),
        );
    }
    // jac[r][c]
    Ok((0..k).map(|r| (0..k).map(|c| cols[c][r].clone()).collect()).collect())
}

fn solve_small(jac: &[Vec<BigComplex>], rhs: &[BigComplex]) -> Option<Vec<BigComplex>> {
    let prec = rhs[0].prec().0;
    match rhs.len() {
        1 => {
            if jac[0][0].is_zero() {
                return None;
            }
            Some(vec![BigComplex::with_val(prec, &rhs[0] / &jac[0][0])])
        }
        2 => {
            let det = BigComplex::with_val(prec, &jac[0][0] * &jac[1][1]) - BigComplex::with_val(prec, &jac[0][1] * &jac[1][0]);
            if det.is_zero() {
                return None;
            }
            let a = BigComplex::with_val(prec, &rhs[0] * &jac[1][1]) - BigComplex::with_val(prec, &jac[0][1] * &rhs[1]);
            let b = BigComplex::with_val(prec, &jac[0][0] * &rhs[1]) - BigComplex::with_val(prec, &jac[1][0] * &rhs[0]);
            Some(vec![a / &det, b / &det])
        }
        _ => None,
    }
}
