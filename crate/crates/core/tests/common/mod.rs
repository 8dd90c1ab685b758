//! Property bodies shared by `properties.rs` (random seeds) and
//! `acceptance.rs` (fixed seed).

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rug::ops::Pow;
use spiked_spectra::numerics::{abs, newton_solve, BigComplex, BigReal, NewtonOptions, Precision, SquareMatrix, TruncatedSeries};
use spiked_spectra::perturb::{exact_cutoff, rs_coefficients, rs_coefficients_with_cutoff, ScaledProblem};
use spiked_spectra::potentials::{Potential, ShiftedLine};
use spiked_spectra::rpm::{
    general_residual, hankel_value, regularized_coeffs, regularized_residual, riccati_coeffs, Parity, RiccatiCoefficients,
    Sigma, SigmaBranch,
};

pub const P: Precision = Precision::DEFAULT;

type Check = std::result::Result<(), TestCaseError>;

pub fn c(re: f64, im: f64) -> BigComplex {
    P.complex((re, im))
}

/// `(m, n)` with both exponents odd, as in the reference table.
pub fn exponents() -> impl Strategy<Value = (u32, u32)> {
    (prop_oneof![Just(1u32), Just(3)], prop_oneof![Just(1u32), Just(3)])
}

/// One of the three families with random parameters.
#[derive(Clone, Debug)]
pub enum Model {
    Int(u32, u32, f64),
    Ab(f64, f64, f64),
    Sextic(f64),
}

impl Model {
    pub fn build(&self) -> Potential {
        match *self {
            Model::Int(m, n, r) => Potential::integer(m, n, P.real(r), P),
            Model::Ab(a, b, g) => Potential::alpha_beta(P.real(a), P.real(b), P.real(g), P),
            Model::Sextic(g) => Potential::shifted_sextic(P.real(g), P),
        }
        .expect("valid parameters")
    }
}

pub fn models() -> impl Strategy<Value = Model> {
    prop_oneof![
        (exponents(), 0.5f64..20.0).prop_map(|((m, n), r)| Model::Int(m, n, r)),
        (0.0f64..2.0, 0.0f64..2.0, 0.5f64..50.0).prop_map(|(a, b, g)| Model::Ab(a, b, g)),
        (0.5f64..200.0).prop_map(Model::Sextic),
    ]
}

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), len)
}

fn max_abs(v: &[BigComplex]) -> BigReal {
    v.iter().map(abs).fold(P.real(0), |a, b| a.max(&b))
}

// Hankel determinants of the exact harmonic ground state vanish identically.
pub fn harmonic_hankel((dim, d, parity, bits): (usize, usize, Parity, u32)) -> Check {
    let p = Precision::new(bits).unwrap();
    let v = Potential::harmonic(p);
    let rc = riccati_coeffs(&v, &p.zero(), &p.one(), &p.zero(), parity.required_order(dim, d)).unwrap();
    prop_assert!(hankel_value(&rc, dim, d, parity).unwrap().is_zero());
    Ok(())
}

pub fn harmonic_hankel_inputs() -> impl Strategy<Value = (usize, usize, Parity, u32)> {
    (1usize..7, 0usize..4, prop_oneof![Just(Parity::Even), Just(Parity::Odd), Just(Parity::Plain)], 64u32..512)
}

// f' - f^2 + V - E vanishes order by order, relative to the sizes of the
// terms that cancel.
pub fn riccati_residual(((m, n), r, e, f0, k): ((u32, u32), f64, (f64, f64), (f64, f64), usize)) -> Check {
    let v = Potential::integer(m, n, P.real(r), P).unwrap();
    let x0 = c(0.0, -r);
    let energy = c(e.0, e.1);
    let rc = riccati_coeffs(&v, &x0, &energy, &c(f0.0, f0.1), k).unwrap();
    let res = general_residual(&v, &rc).unwrap();
    let vs = v.taylor_coeffs(&x0, k).unwrap();
    prop_assert_eq!(res.len(), k);
    for (j, r) in res.iter().enumerate() {
        let mut scale = abs(&rc.coeffs[j + 1]) * (j as u32 + 1) + abs(&vs.coeffs()[j]);
        for i in 0..=j {
            scale += abs(&rc.coeffs[i]) * abs(&rc.coeffs[j - i]);
        }
        if j == 0 {
            scale += abs(&energy);
        }
        prop_assert!(abs(r) <= scale * P.pow2_neg(236), "order {}", j);
    }
    Ok(())
}

pub fn riccati_inputs() -> impl Strategy<Value = ((u32, u32), f64, (f64, f64), (f64, f64), usize)> {
    (exponents(), 0.5f64..20.0, (-100.0f64..100.0, -5.0f64..5.0), (-2.0f64..2.0, -2.0f64..2.0), 4usize..40)
}

// Same certificate for the regularized recursion about the origin.
pub fn regularized_residual_vanishes((m, lambda, e, k, plus): (u32, f64, (f64, f64), usize, bool)) -> Check {
    let branch = if plus { SigmaBranch::Plus } else { SigmaBranch::Minus };
    let sigma = Sigma::new(P.real(lambda), branch).unwrap();
    let energy = c(e.0, e.1);
    let rc = regularized_coeffs(m, &sigma, &energy, k);
    let res = regularized_residual(&rc).unwrap();
    let two_sigma = P.real(&sigma.value * 2u32);
    for (j, r) in res.iter().enumerate() {
        let mut scale = abs(&rc.coeffs[j]) * P.real(&two_sigma + (2 * j + 1) as u32).abs() + 1u32;
        for i in 0..j {
            scale += abs(&rc.coeffs[i]) * abs(&rc.coeffs[j - 1 - i]);
        }
        if j == 0 {
            scale += abs(&energy);
        }
        prop_assert!(abs(r) <= scale * P.pow2_neg(236), "order {}", j);
    }
    Ok(())
}

pub fn regularized_inputs() -> impl Strategy<Value = (u32, f64, (f64, f64), usize, bool)> {
    (prop_oneof![Just(1u32), Just(3)], 0.1f64..1e4, (-100.0f64..100.0, -5.0f64..5.0), 2usize..40, any::<bool>())
}

// Multiplying every coefficient by c multiplies a D x D determinant by c^D,
// so the zero locus does not move.
pub fn hankel_scaling((dim, d, parity, raw, cre, cim): (usize, usize, Parity, Vec<(f64, f64)>, f64, f64)) -> Check {
    let need = parity.required_order(dim, d) + 1;
    let coeffs: Vec<BigComplex> = raw.iter().cycle().take(need).map(|&(a, b)| c(a, b)).collect();
    let rc = RiccatiCoefficients {
        center: P.zero(),
        f0: None,
        energy: P.zero(),
        coeffs,
        variant: spiked_spectra::rpm::RiccatiVariant::General,
    };
    let factor = c(cre, cim);
    prop_assume!(abs(&factor) > 0.01);
    let lhs = hankel_value(&rc.scaled(&factor), dim, d, parity).unwrap();
    let cd = spiked_spectra::numerics::powi(&factor, dim as i64);
    let rhs = BigComplex::with_val(P.bits(), &cd * hankel_value(&rc, dim, d, parity).unwrap());
    let bound = P.real(dim as u32).pow(dim as u32) * max_abs(&rc.coeffs).pow(dim as u32) * abs(&cd);
    prop_assert!(abs(&BigComplex::with_val(P.bits(), &lhs - &rhs)) <= bound * P.pow2_neg(230));
    Ok(())
}

pub fn hankel_scaling_inputs() -> impl Strategy<Value = (usize, usize, Parity, Vec<(f64, f64)>, f64, f64)> {
    (
        1usize..6,
        0usize..3,
        prop_oneof![Just(Parity::Even), Just(Parity::Odd), Just(Parity::Plain)],
        complex_entries(12),
        -5.0f64..5.0,
        -5.0f64..5.0,
    )
}

// U(-s) = conj U(s) on the line x = s - i eps.
pub fn pt_symmetry((model, eps, s): (Model, f64, f64)) -> Check {
    let v = model.build();
    let line = ShiftedLine::new(P.real(eps)).unwrap();
    let u = v.eval(&line.point(&P.real(s), P)).unwrap();
    let w = v.eval(&line.point(&P.real(-s), P)).unwrap().conj();
    let gap = abs(&BigComplex::with_val(P.bits(), &u - &w));
    prop_assert!(gap <= (abs(&u) + 1u32) * P.pow2_neg(236), "gap {}", gap.to_f64());
    Ok(())
}

pub fn pt_inputs() -> impl Strategy<Value = (Model, f64, f64)> {
    (models(), 0.05f64..5.0, -20.0f64..20.0)
}

// Every listed stationary point solves V' = 0 to working precision; for the
// integer family they form a regular 2(m+n)-gon.
pub fn stationary_residuals(model: Model) -> Check {
    let v = model.build();
    let points = v.stationary_points().unwrap();
    for sp in &points {
        prop_assert!(sp.relative_residual(&v).unwrap() <= P.pow2_neg(256 - 20));
    }
    prop_assert_eq!(points.iter().filter(|sp| sp.admissible).count(), 1);
    if let Model::Int(m, n, _) = model {
        let k = 2 * (m + n) as usize;
        prop_assert_eq!(points.len(), k);
        let r0 = abs(&points[0].location);
        let mut args: Vec<f64> = points.iter().map(|sp| sp.location.imag().to_f64().atan2(sp.location.real().to_f64())).collect();
        args.sort_by(f64::total_cmp);
        let step = std::f64::consts::TAU / k as f64;
        for (i, sp) in points.iter().enumerate() {
            prop_assert!(P.real(abs(&sp.location) - &r0).abs() <= P.real(&r0 * P.pow2_neg(200)));
            if i > 0 {
                prop_assert!((args[i] - args[i - 1] - step).abs() < 1e-12);
            }
        }
    }
    Ok(())
}

// Taylor coefficients resum to the potential inside the disc of convergence.
pub fn taylor_resums((model, rho, theta, t, phi): (Model, f64, f64, f64, f64)) -> Check {
    let v = model.build();
    let x0 = c(rho * theta.cos(), rho * theta.sin());
    let h = c(t * rho * phi.cos(), t * rho * phi.sin());
    let series = v.taylor_coeffs(&x0, 90).unwrap();
    let direct = v.eval(&BigComplex::with_val(P.bits(), &x0 + &h)).unwrap();
    let summed = series.eval(&BigComplex::with_val(P.bits(), &x0 + &h));
    let gap = abs(&BigComplex::with_val(P.bits(), &direct - &summed));
    prop_assert!(gap <= (abs(&direct) + 1u32) * P.pow2_neg(128), "gap {}", gap.to_f64());
    Ok(())
}

pub fn taylor_inputs() -> impl Strategy<Value = (Model, f64, f64, f64, f64)> {
    // Centres in the open lower half-plane, steps up to a fifth of |x0|.
    (models(), 0.3f64..10.0, -2.8f64..-0.35, 0.0f64..0.2, 0.0f64..std::f64::consts::TAU)
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

// Partial and complete pivoting, row permutations and transposition agree.
pub fn elimination_orders((raw, perm): (Vec<(f64, f64)>, Vec<usize>)) -> Check {
    let dim = perm.len();
    let entries: Vec<BigComplex> = raw.iter().take(dim * dim).map(|&(a, b)| c(a, b)).collect();
    let m = SquareMatrix::new(dim, entries.clone()).unwrap();
    let det = m.determinant().value;
    let bound = P.real(dim as u32).pow(dim as u32) * max_abs(&entries).pow(dim as u32) * P.pow2_neg(256 - 16);
    let close = |a: &BigComplex, b: &BigComplex| abs(&BigComplex::with_val(P.bits(), a - b)) <= bound;
    prop_assert!(close(&det, &m.determinant_full_pivot().value));
    prop_assert!(close(&det, &m.transpose().determinant().value));
    let sign = if inversions(&perm) % 2 == 0 { 1 } else { -1 };
    let permuted = BigComplex::with_val(P.bits(), m.permute_rows(&perm).unwrap().determinant().value * sign);
    prop_assert!(close(&det, &permuted));
    Ok(())
}

pub fn elimination_inputs() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<usize>)> {
    (1usize..8).prop_flat_map(|dim| (complex_entries(dim * dim), Just((0..dim).collect::<Vec<_>>()).prop_shuffle()))
}

// Truncated series multiplication is associative and distributes over addition.
pub fn series_ring((a, b, cc): (Vec<(f64, f64)>, Vec<(f64, f64)>, Vec<(f64, f64)>)) -> Check {
    let centre = c(0.5, -1.0);
    let mk = |v: &[(f64, f64)]| TruncatedSeries::new(centre.clone(), v.iter().map(|&(x, y)| c(x, y)).collect()).unwrap();
    let (a, b, cc) = (mk(&a), mk(&b), mk(&cc));
    let left = a.mul(&b).unwrap().mul(&cc).unwrap();
    let right = a.mul(&b.mul(&cc).unwrap()).unwrap();
    let dist_l = a.mul(&b.add(&cc).unwrap()).unwrap();
    let dist_r = a.mul(&b).unwrap().add(&a.mul(&cc).unwrap()).unwrap();
    let n = left.order() as u32 + 1;
    let scale = P.real(n * n) * max_abs(a.coeffs()) * max_abs(b.coeffs()) * (max_abs(cc.coeffs()) + 1u32) * P.pow2_neg(256 - 16);
    for (x, y) in left.coeffs().iter().zip(right.coeffs()).chain(dist_l.coeffs().iter().zip(dist_r.coeffs())) {
        prop_assert!(abs(&BigComplex::with_val(P.bits(), x - y)) <= scale);
    }
    Ok(())
}

pub fn series_inputs() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    (1usize..14).prop_flat_map(|len| (complex_entries(len), complex_entries(len), complex_entries(len)))
}

// Newton on an affine residual lands on the root within two steps.
pub fn newton_affine((a, b, guess): (Vec<(f64, f64)>, Vec<(f64, f64)>, Vec<(f64, f64)>)) -> Check {
    let a: Vec<BigComplex> = a.iter().map(|&(x, y)| c(x, y)).collect();
    let det = BigComplex::with_val(P.bits(), &a[0] * &a[3] - BigComplex::with_val(P.bits(), &a[1] * &a[2]));
    prop_assume!(abs(&det) > 1.0);
    let b: Vec<BigComplex> = b.iter().map(|&(x, y)| c(x, y)).collect();
    let guess: Vec<BigComplex> = guess.iter().map(|&(x, y)| c(x, y)).collect();
    let out = newton_solve(
        |x| {
            Ok(vec![
                BigComplex::with_val(P.bits(), &a[0] * &x[0] + BigComplex::with_val(P.bits(), &a[1] * &x[1])) - &b[0],
                BigComplex::with_val(P.bits(), &a[2] * &x[0] + BigComplex::with_val(P.bits(), &a[3] * &x[1])) - &b[1],
            ])
        },
        &guess,
        &NewtonOptions::new(P, P.pow2_neg(200), 20),
    )
    .unwrap();
    prop_assert!(out.iterations <= 2, "{} iterations", out.iterations);
    Ok(())
}

pub fn newton_inputs() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    (complex_entries(4), complex_entries(2), complex_entries(2))
}

// Odd corrections vanish, even ones are real, and a larger oscillator basis
// changes nothing.
pub fn perturbative_structure(((m, n), r, v): ((u32, u32), f64, u32)) -> Check {
    let pot = Potential::integer(m, n, P.real(r), P).unwrap();
    let order = 12;
    let sp = ScaledProblem::at_minimum(&pot, order).unwrap();
    let series = rs_coefficients(&sp, v, order).unwrap();
    prop_assert!(series.check_reality().is_ok());
    let top = series.coeffs.iter().map(abs).fold(P.real(0), |a, b| a.max(&b));
    for j in (1..=order).step_by(2) {
        prop_assert!(abs(&series.coeffs[j]) <= P.real(&top * P.half_tolerance()));
    }
    let wide = rs_coefficients_with_cutoff(&sp, v, order, 2 * exact_cutoff(v, order)).unwrap();
    for (a, b) in series.coeffs.iter().zip(&wide.coeffs) {
        prop_assert!(abs(&BigComplex::with_val(P.bits(), a - b)) <= P.real(&top * P.half_tolerance()));
    }
    Ok(())
}

pub fn perturbative_inputs() -> impl Strategy<Value = ((u32, u32), f64, u32)> {
    (exponents(), 1.0f64..20.0, 0u32..3)
}

// The family x^2 + g^2/x^6 written with (ix) powers equals the integer family.
pub fn alpha_beta_reduces((r, s): (f64, f64)) -> Check {
    let int = Potential::integer(1, 3, P.real(r), P).unwrap();
    let g = P.real(P.real(r).pow(8u32) / 3u32).sqrt();
    let ab = Potential::alpha_beta(P.real(0), P.real(0), g, P).unwrap();
    let x = c(s, -r);
    let gap = abs(&BigComplex::with_val(P.bits(), int.eval(&x).unwrap() - ab.eval(&x).unwrap()));
    prop_assert!(gap <= (abs(&int.eval(&x).unwrap()) + 1u32) * P.pow2_neg(236));
    let x0 = c(0.0, -r);
    let (ti, ta) = (int.taylor_coeffs(&x0, 12).unwrap(), ab.taylor_coeffs(&x0, 12).unwrap());
    for (a, b) in ti.coeffs().iter().zip(ta.coeffs()) {
        prop_assert!(abs(&BigComplex::with_val(P.bits(), a - b)) <= (abs(a) + 1u32) * P.pow2_neg(230));
    }
    Ok(())
}

pub fn alpha_beta_inputs() -> impl Strategy<Value = (f64, f64)> {
    (0.5f64..20.0, -10.0f64..10.0)
}

/// A named property with its input strategy, run `cases` times.
pub struct Suite {
    pub name: &'static str,
    pub run: fn(&mut TestRunner) -> Result<(), String>,
}

macro_rules! suite {
    ($name:expr, $inputs:expr, $body:expr) => {
        Suite { name: $name, run: |runner| runner.run(&$inputs, $body).map_err(|e| e.to_string()) }
    };
}

/// The structural suites, in the order the acceptance report lists them.
pub fn suites() -> Vec<Suite> {
    vec![
        suite!("harmonic Hankel vanishing", harmonic_hankel_inputs(), harmonic_hankel),
        suite!("Riccati residual (general)", riccati_inputs(), riccati_residual),
        suite!("Riccati residual (regularized)", regularized_inputs(), regularized_residual_vanishes),
        suite!("Hankel scaling invariance", hankel_scaling_inputs(), hankel_scaling),
        suite!("PT symmetry U(-s)* = U(s)", pt_inputs(), pt_symmetry),
        suite!("stationary-point residuals", models(), stationary_residuals),
        suite!("determinant elimination orders", elimination_inputs(), elimination_orders),
    ]
}

pub fn runner(cases: u32, deterministic: bool) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    if deterministic {
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
    } else {
        TestRunner::new(config)
    }
}
