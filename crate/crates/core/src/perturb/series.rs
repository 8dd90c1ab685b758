use super::scaled::ScaledProblem;
use crate::error::{Error, Result};
use crate::numerics::{abs, BigComplex, BigReal, Precision};

/// `epsilon_0..=epsilon_N` of `epsilon = sum_j epsilon_j b^j` for level `v`.
#[derive(Clone, Debug)]
pub struct PerturbationSeries {
    pub v: u32,
    pub coeffs: Vec<BigComplex>,
    /// Rounding scale of each coefficient: the sum of the moduli of the terms
    /// that were added to form it.
    pub magnitudes: Vec<BigReal>,
    /// Orders whose coefficient breaks the reality pattern (imaginary part of
    /// an even order, or a non-vanishing odd order) beyond rounding.
    pub flagged: Vec<usize>,
    /// `b`-series of `-b psi'(x0)/psi(x0)` built from the same eigenvector
    /// corrections (`v = 0` only, where `psi(x0) != 0`).
    pub log_derivative: Option<Vec<BigComplex>>,
}

impl PerturbationSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Fail with the first flagged order, if any.
    pub fn check_reality(&self) -> Result<()> {
        match self.flagged.first() {
            None => Ok(()),
            Some(&j) => Err(Error::RealityViolated {
                order: j,
                imag: self.coeffs[j].imag().to_string_radix(10, Some(6)),
            }),
        }
    }

    /// True when `|epsilon_j|` is at rounding level.
    pub fn vanishes(&self, j: usize) -> bool {
        let prec = Precision::new(self.coeffs[j].prec().0).expect("valid");
        abs(&self.coeffs[j]) <= BigReal::with_val(prec.bits(), &self.magnitudes[j] * prec.half_tolerance())
    }
}

/// `s` acting on a coefficient vector in the oscillator basis:
/// `s |n> = (sqrt(n) |n-1> + sqrt(n+1) |n+1>) / sqrt(2)`.
struct Position {
    /// `sqrt(n / 2)` for `n = 0..=cutoff + 1`.
    roots: Vec<BigReal>,
}

impl Position {
    fn new(prec: Precision, cutoff: usize) -> Self {
        let roots = (0..=cutoff + 1).map(|n| prec.real(n as f64 / 2.0).sqrt()).collect();
        Position { roots }
    }

    fn apply(&self, x: &[BigComplex], prec: Precision) -> Vec<BigComplex> {
        let len = x.len();
        let mut y = vec![prec.zero(); len];
        for n in 0..len {
            if x[n].is_zero() {
                continue;
            }
            if n > 0 {
                y[n - 1] += BigComplex::with_val(prec.bits(), &x[n] * &self.roots[n]);
            }
            if n + 1 < len {
                y[n + 1] += BigComplex::with_val(prec.bits(), &x[n] * &self.roots[n + 1]);
            }
        }
        y
    }

    fn apply_abs(&self, x: &[BigReal], prec: Precision) -> Vec<BigReal> {
        let len = x.len();
        let mut y = vec![prec.real(0); len];
        for n in 0..len {
            if n > 0 {
                y[n - 1] += BigReal::with_val(prec.bits(), &x[n] * &self.roots[n]);
            }
            if n + 1 < len {
                y[n + 1] += BigReal::with_val(prec.bits(), &x[n] * &self.roots[n + 1]);
            }
        }
        y
    }
}

/// Highest oscillator level reached by the order-`n` corrections of level
/// `v`: each grade-`j` term `s^(j+2)` climbs at most `j + 2 <= 3j` levels.
pub fn exact_cutoff(v: u32, n: usize) -> usize {
    v as usize + 3 * n + 2
}

/// Rayleigh–Schrödinger coefficients through order `n` with the exact
/// basis cutoff.
pub fn rs_coefficients(sp: &ScaledProblem, v: u32, n: usize) -> Result<PerturbationSeries> {
    rs_coefficients_with_cutoff(sp, v, n, exact_cutoff(v, n))
}

/// Same with an explicit oscillator-basis cutoff (highest level kept).
pub fn rs_coefficients_with_cutoff(sp: &ScaledProblem, v: u32, n: usize, cutoff: usize) -> Result<PerturbationSeries> {
    if n > sp.terms() {
        return Err(Error::InvalidInput(format!(
            "order {n} needs {n} perturbation terms, the scaled problem keeps {}",
            sp.terms()
        )));
    }
    let v = v as usize;
    if cutoff < v {
        return Err(Error::InvalidInput(format!("basis cutoff {cutoff} is below the level {v}")));
    }
    let prec = sp.precision();
    let len = cutoff + 1;
    let pos = Position::new(prec, cutoff);
    let c_abs: Vec<BigReal> = sp.c.iter().map(abs).collect();

    // psi[k]: order-k eigenvector correction, <v|psi_k> = delta_k0.
    let mut psi: Vec<Vec<BigComplex>> = Vec::with_capacity(n + 1);
    let mut psi_abs: Vec<Vec<BigReal>> = Vec::with_capacity(n + 1);
    let mut unit = vec![prec.zero(); len];
    unit[v] = prec.one();
    let mut unit_abs = vec![prec.real(0); len];
    unit_abs[v] = prec.real(1);
    psi.push(unit);
    psi_abs.push(unit_abs);
    let mut eps = vec![prec.complex(2 * v + 1)];
    let mut mags = vec![prec.real(2 * v + 1)];

    for k in 1..=n {
        // rhs = sum_{j=1..k} c_j s^(j+2) psi_{k-j}, and its modulus bound.
        let mut rhs = vec![prec.zero(); len];
        let mut rhs_abs = vec![prec.real(0); len];
        for j in 1..=k {
            if sp.c[j - 1].is_zero() {
                continue;
            }
            let mut w = psi[k - j].clone();
            let mut w_abs = psi_abs[k - j].clone();
            for _ in 0..j + 2 {
                w = pos.apply(&w, prec);
                w_abs = pos.apply_abs(&w_abs, prec);
            }
            for i in 0..len {
                rhs[i] += BigComplex::with_val(prec.bits(), &w[i] * &sp.c[j - 1]);
                rhs_abs[i] += BigReal::with_val(prec.bits(), &w_abs[i] * &c_abs[j - 1]);
            }
        }
        let e_k = rhs[v].clone();
        let mag_k = rhs_abs[v].clone();
        // (H0 - eps_0) psi_k = -rhs + sum_{j=1..k-1} eps_j psi_{k-j}, off the level v.
        let mut next = vec![prec.zero(); len];
        let mut next_abs = vec![prec.real(0); len];
        for i in (0..len).filter(|&i| i != v) {
            let mut acc = BigComplex::with_val(prec.bits(), -&rhs[i]);
            let mut acc_abs = rhs_abs[i].clone();
            for j in 1..k {
                acc += BigComplex::with_val(prec.bits(), &eps[j] * &psi[k - j][i]);
                acc_abs += BigReal::with_val(prec.bits(), abs(&eps[j]) * &psi_abs[k - j][i]);
            }
            let gap = 2 * (i as i64 - v as i64);
            next[i] = acc / gap;
            next_abs[i] = acc_abs / gap.unsigned_abs();
        }
        eps.push(e_k);
        mags.push(mag_k);
        psi.push(next);
        psi_abs.push(next_abs);
    }

    let tol = prec.half_tolerance();
    let flagged = (0..=n)
        .filter(|&j| {
            let bound = BigReal::with_val(prec.bits(), &mags[j] * &tol);
            let off = if j % 2 == 1 { abs(&eps[j]) } else { BigReal::with_val(prec.bits(), eps[j].imag().abs_ref()) };
            off > bound
        })
        .collect();
    let log_derivative = (v == 0).then(|| log_derivative_series(&psi, prec));
    Ok(PerturbationSeries { v: v as u32, coeffs: eps, magnitudes: mags, flagged, log_derivative })
}

/// `-b psi'(x0)/psi(x0) = -sum_k r_k b^k` from the eigenvector corrections,
/// using `phi_n(0)` and `phi_n'(0)` of the oscillator functions (common factor
/// `pi^(-1/4)` dropped).
fn log_derivative_series(psi: &[Vec<BigComplex>], prec: Precision) -> Vec<BigComplex> {
    let len = psi[0].len();
    // phi_n(0): phi_0 = 1, phi_n = -sqrt((n-1)/n) phi_(n-2), odd n vanish.
    let mut at0 = vec![prec.real(0); len + 1];
    at0[0] = prec.real(1);
    for n in (2..=len).step_by(2) {
        let ratio = prec.real((n - 1) as f64 / n as f64).sqrt();
        at0[n] = -BigReal::with_val(prec.bits(), &at0[n - 2] * ratio);
    }
    // phi_n'(0) = sqrt(n/2) phi_(n-1)(0) - sqrt((n+1)/2) phi_(n+1)(0).
    let slope: Vec<BigReal> = (0..len)
        .map(|n| {
            let up = BigReal::with_val(prec.bits(), &at0[n + 1] * prec.real((n + 1) as f64 / 2.0).sqrt());
            let down = if n > 0 { BigReal::with_val(prec.bits(), &at0[n - 1] * prec.real(n as f64 / 2.0).sqrt()) } else { prec.real(0) };
            down - up
        })
        .collect();
    let dot = |vec: &[BigComplex], w: &[BigReal]| {
        let mut acc = prec.zero();
        for (a, b) in vec.iter().zip(w) {
            acc += BigComplex::with_val(prec.bits(), a * b);
        }
        acc
    };
    let p: Vec<BigComplex> = psi.iter().map(|x| dot(x, &at0[..len])).collect();
    let q: Vec<BigComplex> = psi.iter().map(|x| dot(x, &slope)).collect();
    // r = q / p as power series in b.
    let mut r: Vec<BigComplex> = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        let mut acc = q[k].clone();
        for j in 1..=k {
            acc -= BigComplex::with_val(prec.bits(), &p[j] * &r[k - j]);
        }
        r.push(acc / &p[0]);
    }
    r.into_iter().map(|x| -x).collect()
}
