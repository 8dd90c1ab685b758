//! Deterministic checks of the Riccati–Padé ladders against closed forms and
//! against each other.

use rug::ops::Pow;
use spiked_spectra::cli::reference::table1;
use spiked_spectra::cli::{ground_state, LadderArgs};
use spiked_spectra::numerics::{abs, BigComplex, BigReal, Precision};
use spiked_spectra::perturb::partial_sums;
use spiked_spectra::potentials::Potential;
use spiked_spectra::rpm::{hankel_value, riccati_coeffs, solve_general, HankelVariant, Parity, RpmProblem, Seed};

const P: Precision = Precision::DEFAULT;

fn e00(r: &BigReal) -> BigReal {
    // 2 - sqrt(4 R^4 + 1)
    let q = P.real(P.real(r.clone().square().square()) * 4u32) + 1u32;
    P.real(2) - q.sqrt()
}

fn gap(a: &BigComplex, b: &BigReal) -> BigReal {
    abs(&BigComplex::with_val(P.bits(), a - b))
}

#[test]
fn quartic_ladder_error_never_grows() {
    for r in ["1", "2", "10"] {
        let r = P.parse_real(r).unwrap();
        let v = Potential::integer(1, 1, r.clone(), P).unwrap();
        let exact = e00(&r);
        let args = LadderArgs { dmax: 12, settle: 200, ..LadderArgs::default() };
        let ladder = ground_state(&v, HankelVariant::General, 0, &args).unwrap().ladder;
        // Newton stops once steps fall below 2^-(bits/2).
        let floor = P.real(abs(&P.complex(&exact)) * P.pow2_neg(120));
        let errs: Vec<BigReal> = ladder.solutions.iter().map(|s| gap(&s.energy, &exact)).collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0] || w[1] <= floor, "R={}: {} then {}", r.to_f64(), w[0].to_f64(), w[1].to_f64());
        }
        assert!(*errs.last().unwrap() <= floor);
    }
}

fn both_variants(m: u32, r: &str) -> (BigComplex, BigComplex, BigReal) {
    let v = Potential::integer(m, 1, P.parse_real(r).unwrap(), P).unwrap();
    let best = |variant| ground_state(&v, variant, 0, &LadderArgs::default()).unwrap().ladder.best().cloned().unwrap();
    let (g, q) = (best(HankelVariant::General), best(HankelVariant::Regularized));
    let est = P.real(g.error_estimate.as_ref().unwrap() + q.error_estimate.as_ref().unwrap());
    (g.energy, q.energy, est)
}

#[test]
fn general_and_regularized_agree_for_n_equal_one() {
    for (m, r) in [(1, "1"), (1, "1.5"), (1, "5"), (1, "20"), (3, "5"), (3, "10"), (3, "20")] {
        let (g, q, est) = both_variants(m, r);
        let tol = est.max(&P.real(abs(&g) * P.pow2_neg(120))).clone();
        let d = abs(&BigComplex::with_val(P.bits(), &g - &q));
        assert!(d <= tol, "m={m} R={r}: differ by {}", d.to_f64());
    }
}

#[test]
fn sextic_well_variants_split_only_far_down() {
    // With m = 3 the origin condition of the regularized system and the
    // line spectrum part ways by an amount exponentially small in R.
    let (g, q, _) = both_variants(3, "2");
    let d = abs(&BigComplex::with_val(P.bits(), &g - &q));
    assert!(d < P.real(abs(&g) * 1e-20));
}

#[test]
fn converged_pair_zeroes_both_hankel_conditions() {
    let v = Potential::integer(1, 3, P.real(2), P).unwrap();
    let x0 = P.complex((0, -2));
    let ladder = ground_state(&v, HankelVariant::General, 0, &LadderArgs::default()).unwrap().ladder;
    let best = ladder.best().unwrap();
    let f0 = best.f0.clone().unwrap();
    let rc = riccati_coeffs(&v, &x0, &best.energy, &f0, Parity::Odd.required_order(best.dim, 0)).unwrap();
    let top = rc.coeffs.iter().map(abs).fold(P.real(0), |a, b| a.max(&b));
    for parity in [Parity::Even, Parity::Odd] {
        let det = abs(&hankel_value(&rc, best.dim, 0, parity).unwrap());
        let scale = P.real(top.clone().pow(best.dim as u32));
        assert!(det <= scale * P.pow2_neg(64), "{parity:?}");
    }
    // Re-solving at the same size from the converged pair stays put.
    let again = solve_general(&v, &x0, best.dim, 0, Some(&Seed::from(best))).unwrap();
    assert!(abs(&BigComplex::with_val(P.bits(), &again.energy - &best.energy)) < P.pow2_neg(100));
}

#[test]
fn ladder_decays_slower_at_small_r() {
    let at = |r: u32| {
        let v = Potential::integer(1, 3, P.real(r), P).unwrap();
        let args = LadderArgs { settle: 200, dmax: 18, ..LadderArgs::default() };
        let ladder = ground_state(&v, HankelVariant::General, 0, &args).unwrap().ladder;
        ladder.solutions.iter().find(|s| s.dim == 16).and_then(|s| s.error_estimate.clone()).unwrap()
    };
    assert!(at(1) > at(5));
}

#[test]
fn quartic_partial_sums_approach_closed_form() {
    for r in ["1", "1.5", "2", "5"] {
        let r = P.parse_real(r).unwrap();
        let v = Potential::integer(1, 1, r.clone(), P).unwrap();
        let sums = partial_sums(&v, 0, 24).unwrap();
        let exact = e00(&r);
        let errs: Vec<BigReal> = sums.iter().step_by(2).map(|e| gap(&e.value, &exact)).collect();
        assert!(errs[12] < errs[2], "R={}", r.to_f64());
        assert!(errs[6] < errs[2], "R={}", r.to_f64());
    }
}

#[test]
fn harmonic_estimate_improves_with_r() {
    let table = table1();
    for (m, n) in [(1, 1), (1, 3), (3, 1), (3, 3)] {
        let err = |r: &str| {
            let e = table.iter().find(|e| e.m == m && e.n == n && e.r == r).unwrap();
            let v = Potential::integer(m, n, P.parse_real(r).unwrap(), P).unwrap();
            gap(&RpmProblem::harmonic_seed(&v, 0).unwrap().energy, &P.parse_real(&e.energy).unwrap())
        };
        assert!(err("20") < err("10"), "m={m} n={n}");
    }
}
