use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rug::ops::Pow;
use serde_json::{json, Value};

use super::reference::{self, Table1Entry};
use super::report::Report;
use super::{
    CompareArgs, FamilyKind, Fig2Args, LadderArgs, LevelArgs, ModelArgs, PerturbArgs, ProfileArgs, RpmArgs, Settings,
    ShiftArg, TaylorArgs, Table1Args, VariantArg,
};
use crate::error::{Error, Result};
use crate::numerics::{abs, matching_digits, to_decimal, BigComplex, BigReal, Precision};
use crate::perturb::{energy_partial_sum, error_curve, optimal_truncation, rs_coefficients, EnergyEstimate, ScaledProblem};
use crate::potentials::{profile_csv, Family, Potential, ProfileShift, ShiftedLine};
use crate::rpm::{track_level, HankelVariant, RpmProblem, RpmSolution, TrackOptions, TrackReport};

/// Digits used when comparing with the reference table.
const COMPARE_WIDTH: usize = 20;

const RPM_HEADER: [&str; 12] =
    ["model", "m", "n", "R", "D", "d", "E_re", "E_im", "f0_re", "f0_im", "err_est", "digits_claimed"];

impl Default for LadderArgs {
    fn default() -> Self {
        LadderArgs { dmax: 40, d: 0, settle: 24 }
    }
}

fn model(a: &ModelArgs, prec: Precision) -> Result<Potential> {
    let given = |name: &str, v: bool| if v { Some(name.to_string()) } else { None };
    let extra: Vec<String> = match a.family {
        FamilyKind::Int => vec![given("alpha", a.alpha.is_some()), given("beta", a.beta.is_some()), given("g", a.g.is_some())],
        FamilyKind::Ab => vec![given("m", a.m.is_some()), given("n", a.n.is_some()), given("R", a.r.is_some())],
        FamilyKind::Sextic => vec![
            given("m", a.m.is_some()),
            given("n", a.n.is_some()),
            given("R", a.r.is_some()),
            given("alpha", a.alpha.is_some()),
            given("beta", a.beta.is_some()),
        ],
    }
    .into_iter()
    .flatten()
    .collect();
    if !extra.is_empty() {
        return Err(Error::Usage(format!("--{} does not apply to this family", extra.join(", --"))));
    }
    let need = |v: &Option<String>, name: &str| {
        v.as_deref()
            .ok_or_else(|| Error::Usage(format!("this family needs --{name}")))
            .and_then(|s| prec.parse_real(s))
    };
    match a.family {
        FamilyKind::Int => {
            let m = a.m.ok_or_else(|| Error::Usage("--family int needs --m".into()))?;
            let n = a.n.ok_or_else(|| Error::Usage("--family int needs --n".into()))?;
            Potential::integer(m, n, need(&a.r, "R")?, prec)
        }
        FamilyKind::Ab => Potential::alpha_beta(need(&a.alpha, "alpha")?, need(&a.beta, "beta")?, need(&a.g, "g")?, prec),
        FamilyKind::Sextic => Potential::shifted_sextic(need(&a.g, "g")?, prec),
    }
}

fn complex_cells(z: &BigComplex, digits: usize) -> [String; 2] {
    [to_decimal(z.real(), digits), to_decimal(z.imag(), digits)]
}

/// Six significant digits in scientific notation, for error sizes.
fn short(x: &BigReal) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(6))
}

fn par_map<T: Sync, U: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<U>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(items.len()).max(1) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= items.len() {
                    break;
                }
                let out = f(&items[k]);
                *slots[k].lock().expect("no poisoned slot") = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().expect("no poisoned slot").expect("every slot filled")).collect()
}

/// Riccati–Padé ladder for level `v`, followed from the harmonic limit.
pub fn ground_state(potential: &Potential, variant: HankelVariant, v: u32, ladder: &LadderArgs) -> Result<TrackReport> {
    let prec = potential.precision();
    let mut opts = TrackOptions { displacement: ladder.d, max_dim: ladder.dmax, ..TrackOptions::default() };
    opts.tracking_dim = opts.tracking_dim.min(ladder.dmax.saturating_sub(1).max(2));
    opts.solver.stop_below = Some(prec.real(10).pow(-(ladder.settle as i32)));
    let report = track_level(potential, variant, v, &opts)?;
    if report.ladder.solutions.is_empty() {
        let reasons: Vec<String> = report.ladder.failures.iter().map(|(d, e)| format!("D={d}: {e}")).collect();
        return Err(Error::Divergence {
            iterations: report.steps,
            last_step: "no rung of the ladder converged".into(),
            last_iterate: reasons,
        });
    }
    Ok(report)
}

fn rpm_cells(potential: &Potential, sol: &RpmSolution, digits: usize) -> Vec<String> {
    let (m, n, r) = match potential.family() {
        Family::Integer { m, n, r } => (m.to_string(), n.to_string(), to_decimal(r, digits)),
        _ => (String::new(), String::new(), String::new()),
    };
    let [e_re, e_im] = complex_cells(&sol.energy, digits);
    let [f_re, f_im] = match &sol.f0 {
        Some(f) => complex_cells(f, digits),
        None => [String::new(), String::new()],
    };
    vec![
        potential.label(),
        m,
        n,
        r,
        sol.dim.to_string(),
        sol.displacement.to_string(),
        e_re,
        e_im,
        f_re,
        f_im,
        sol.error_estimate.as_ref().map(short).unwrap_or_default(),
        sol.digits_claimed().map(|k| k.to_string()).unwrap_or_default(),
    ]
}

pub fn stationary(a: &ModelArgs, s: &Settings) -> Result<Report> {
    let p = model(a, s.precision)?;
    let mut rep = Report::new(&["k", "x_re", "x_im", "d2v_re", "d2v_im", "admissible"]);
    for (k, sp) in p.stationary_points()?.iter().enumerate() {
        let [x_re, x_im] = complex_cells(&sp.location, s.digits);
        let [v_re, v_im] = complex_cells(&sp.second_derivative, s.digits);
        rep.push(vec![k.to_string(), x_re, x_im, v_re, v_im, sp.admissible.to_string()]);
    }
    Ok(rep)
}

pub fn taylor(a: &TaylorArgs, s: &Settings) -> Result<Report> {
    let prec = s.precision;
    let p = model(&a.model, prec)?;
    let center = match (&a.center_re, &a.center_im) {
        (Some(re), Some(im)) => prec.complex((prec.parse_real(re)?, prec.parse_real(im)?)),
        _ => p.admissible_minimum()?.location,
    };
    let series = p.taylor_coeffs(&center, a.order)?;
    let mut rep = Report::new(&["j", "re", "im"]);
    for (j, c) in series.coeffs().iter().enumerate() {
        let [re, im] = complex_cells(c, s.digits);
        rep.push(vec![j.to_string(), re, im]);
    }
    Ok(rep)
}

pub fn harmonic(a: &LevelArgs, s: &Settings) -> Result<Report> {
    let p = model(&a.model, s.precision)?;
    let x0 = p.admissible_minimum()?.location;
    let t = p.taylor_coeffs(&x0, 2)?;
    let seed = RpmProblem::harmonic_seed(&p, a.v)?;
    let mut rep = Report::new(&["quantity", "re", "im"]);
    for (name, z) in [("x0", &x0), ("V0", &t.coeffs()[0]), ("V2", &t.coeffs()[2]), ("E", &seed.energy)] {
        let [re, im] = complex_cells(z, s.digits);
        rep.push(vec![name.to_string(), re, im]);
    }
    Ok(rep)
}

pub fn perturb(a: &PerturbArgs, s: &Settings) -> Result<Report> {
    let p = model(&a.model, s.precision)?;
    let sp = ScaledProblem::at_minimum(&p, a.order.max(1))?;
    let series = rs_coefficients(&sp, a.v, a.order)?;
    let mut rep = Report::new(&["j", "eps_re", "eps_im", "partial_re", "partial_im"]);
    for j in 0..=a.order {
        // Coefficients that vanish exactly print as 0 rather than as rounding noise.
        let [e_re, e_im] = if series.vanishes(j) {
            ["0".to_string(), "0".to_string()]
        } else {
            complex_cells(&series.coeffs[j], s.digits)
        };
        let [p_re, p_im] = complex_cells(&energy_partial_sum(&sp, &series, j)?.value, s.digits);
        rep.push(vec![j.to_string(), e_re, e_im, p_re, p_im]);
    }
    if let Err(e) = series.check_reality() {
        rep.fail(format!("{}: {e}", p.label()));
    }
    Ok(rep)
}

fn variant(v: VariantArg) -> HankelVariant {
    match v {
        VariantArg::General => HankelVariant::General,
        VariantArg::Regularized => HankelVariant::Regularized,
    }
}

pub fn rpm(a: &RpmArgs, s: &Settings) -> Result<Report> {
    let p = model(&a.model, s.precision)?;
    let mut rep = Report::new(&RPM_HEADER);
    let report = match ground_state(&p, variant(a.variant), a.v, &a.ladder) {
        Ok(r) => r,
        Err(e) => {
            rep.fail(format!("{}: {e}", p.label()));
            return Ok(rep);
        }
    };
    for sol in &report.ladder.solutions {
        rep.push(rpm_cells(&p, sol, s.digits));
    }
    let best = report.ladder.best().expect("non-empty ladder");
    if let Some(target) = a.digits_target {
        let got = best.digits_claimed().unwrap_or(0);
        if got < target {
            rep.fail(format!("{}: ladder claims {got} digits, target {target}", p.label()));
        }
    }
    Ok(rep)
}

pub fn compare(a: &CompareArgs, s: &Settings) -> Result<Report> {
    let prec = s.precision;
    let p = model(&a.model, prec)?;
    let d = s.digits;
    let harm = RpmProblem::harmonic_seed(&p, 0)?.energy;
    let (pert, pert_f0) = optimal_truncation(&p, 0, a.order)?;
    let report = ground_state(&p, HankelVariant::General, 0, &a.ladder)?;
    let best = report.ladder.best().expect("non-empty ladder");
    let diff = |z: &BigComplex| abs(&BigComplex::with_val(prec.bits(), z - &best.energy));
    let abs_im = BigReal::with_val(prec.bits(), best.energy.imag().abs_ref());
    let err = best.error_estimate.clone();
    let real_ok = err.as_ref().map(|e| abs_im <= *e);

    let order = match pert.kind {
        crate::perturb::EstimateKind::Partial(n) => n,
        _ => 0,
    };
    let mut rep = Report::new(&["method", "order", "E_re", "E_im", "abs_diff", "err_est"]);
    let row = |name: &str, order: String, z: &BigComplex, err: String| {
        let [re, im] = complex_cells(z, d);
        vec![name.to_string(), order, re, im, short(&diff(z)), err]
    };
    rep.push(row("harmonic", "0".into(), &harm, String::new()));
    rep.push(row("perturbative", order.to_string(), &pert.value, pert.error_bar.as_ref().map(short).unwrap_or_default()));
    rep.push(row("rpm", best.dim.to_string(), &best.energy, err.as_ref().map(short).unwrap_or_default()));

    let cells = rpm_cells(&p, best, d);
    let rpm_json: serde_json::Map<String, Value> =
        RPM_HEADER.iter().map(|h| h.to_string()).zip(cells.into_iter().map(Value::String)).collect();
    let (f_re, f_im) = match &pert_f0 {
        Some(f) => {
            let [re, im] = complex_cells(f, d);
            (re, im)
        }
        None => (String::new(), String::new()),
    };
    let [h_re, h_im] = complex_cells(&harm, d);
    let [p_re, p_im] = complex_cells(&pert.value, d);
    rep.json = Some(json!({
        "model": p.label(),
        "harmonic": { "E_re": h_re, "E_im": h_im, "abs_diff": short(&diff(&harm)) },
        "perturbative": {
            "N": order.to_string(),
            "E_re": p_re,
            "E_im": p_im,
            "f0_re": f_re,
            "f0_im": f_im,
            "err_est": pert.error_bar.as_ref().map(short).unwrap_or_default(),
            "abs_diff": short(&diff(&pert.value)),
        },
        "rpm": Value::Object(rpm_json),
        "reality": {
            "abs_im": short(&abs_im),
            "err_est": err.as_ref().map(short).unwrap_or_default(),
            "within_estimate": real_ok.map(|b| b.to_string()).unwrap_or_default(),
        },
    }));
    if real_ok == Some(false) {
        rep.fail(format!("{}: |Im E| = {} exceeds the ladder estimate", p.label(), short(&abs_im)));
    }
    Ok(rep)
}

/// One reproduced reference value.
#[derive(Clone, Debug)]
pub struct ReproEntry {
    pub entry: Table1Entry,
    pub outcome: std::result::Result<RpmSolution, String>,
    /// Leading significant digits shared with the reference after rounding
    /// both to 20 digits.
    pub matching_digits: usize,
    pub runtime: Duration,
}

/// Solve every entry with the general variant about `x0 = -iR`.
pub fn reproduce_table1(entries: &[Table1Entry], prec: Precision, ladder: &LadderArgs, threads: usize) -> Vec<ReproEntry> {
    par_map(entries, threads, |e| {
        let start = Instant::now();
        let outcome = prec
            .parse_real(&e.r)
            .and_then(|r| Potential::integer(e.m, e.n, r, prec))
            .and_then(|p| ground_state(&p, HankelVariant::General, 0, ladder))
            .map(|rep| rep.ladder.best().expect("non-empty ladder").clone())
            .map_err(|err| err.to_string());
        let matching = match (&outcome, prec.parse_real(&e.energy)) {
            (Ok(sol), Ok(target)) => matching_digits(sol.energy.real(), &target, COMPARE_WIDTH),
            _ => 0,
        };
        ReproEntry { entry: e.clone(), outcome, matching_digits: matching, runtime: start.elapsed() }
    })
}

pub fn table1_report(results: &[ReproEntry], digits_target: usize, timings: bool, digits: usize) -> Report {
    let mut header = vec!["m", "n", "R", "target", "computed", "matching_digits", "digits_claimed", "err_est", "status"];
    if timings {
        header.push("runtime_s");
    }
    let mut rep = Report::new(&header);
    for r in results {
        let e = &r.entry;
        let (computed, claimed, err) = match &r.outcome {
            Ok(sol) => (
                to_decimal(sol.energy.real(), digits),
                sol.digits_claimed().map(|k| k.to_string()).unwrap_or_default(),
                sol.error_estimate.as_ref().map(short).unwrap_or_default(),
            ),
            Err(_) => Default::default(),
        };
        let ok = r.outcome.is_ok() && r.matching_digits >= digits_target;
        let mut row = vec![
            e.m.to_string(),
            e.n.to_string(),
            e.r.clone(),
            e.energy.clone(),
            computed,
            r.matching_digits.to_string(),
            claimed,
            err,
            if ok { "pass" } else { "fail" }.to_string(),
        ];
        if timings {
            row.push(format!("{:.3}", r.runtime.as_secs_f64()));
        }
        rep.push(row);
        let what = format!("m={} n={} R={}", e.m, e.n, e.r);
        match &r.outcome {
            Err(msg) => rep.fail(format!("{what}: {msg}")),
            Ok(_) if !ok => rep.fail(format!("{what}: {} matching digits, target {digits_target}", r.matching_digits)),
            Ok(_) => {}
        }
    }
    rep
}

pub fn table1(a: &Table1Args, s: &Settings) -> Result<Report> {
    if a.digits_target > COMPARE_WIDTH {
        return Err(Error::Usage(format!("--digits-target must be at most {COMPARE_WIDTH}")));
    }
    let entries: Vec<Table1Entry> = reference::table1()
        .into_iter()
        .filter(|e| a.m.is_none_or(|m| m == e.m) && a.n.is_none_or(|n| n == e.n) && a.r.as_ref().is_none_or(|r| *r == e.r))
        .collect();
    if entries.is_empty() {
        return Err(Error::Usage("no table entry matches the filters".into()));
    }
    let results = reproduce_table1(&entries, s.precision, &a.ladder, s.threads);
    Ok(table1_report(&results, a.digits_target, a.timings, s.digits))
}

pub const FIG2_MODELS: [(u32, u32); 4] = [(1, 1), (1, 3), (3, 1), (3, 3)];

pub fn fig2(a: &Fig2Args, s: &Settings) -> Result<Report> {
    let prec = s.precision;
    let r = prec.parse_real(&a.r)?;
    let jobs: Vec<(u32, u32)> = FIG2_MODELS.to_vec();
    let curves = par_map(&jobs, s.threads, |&(m, n)| -> Result<_> {
        let p = Potential::integer(m, n, r.clone(), prec)?;
        let rpm = ground_state(&p, HankelVariant::General, 0, &a.ladder)?;
        let best = rpm.ladder.best().expect("non-empty ladder").clone();
        let reference = EnergyEstimate::rpm(best.energy.clone(), best.error_estimate.clone());
        Ok((p.clone(), best, error_curve(&p, 0, a.nmax, &reference)?))
    });
    let mut rep = Report::new(&[
        "m",
        "n",
        "reference",
        "best_n",
        "best_log10_rel_err",
        "threshold",
        "oscillation_onset",
        "initial_decrease",
        "status",
    ]);
    if let Some(dir) = &a.curves {
        std::fs::create_dir_all(dir)?;
    }
    for (&(m, n), curve) in jobs.iter().zip(curves) {
        let (p, best, curve) = match curve {
            Ok(c) => c,
            Err(e) => {
                rep.fail(format!("m={m} n={n}: {e}"));
                continue;
            }
        };
        if let Some(dir) = &a.curves {
            std::fs::write(dir.join(format!("fig2_m{m}_n{n}.csv")), curve.to_csv())?;
        }
        let top = curve.best().expect("non-empty curve");
        let decreasing = curve.decreases_until(a.initial);
        let ok = top.log10_rel_err <= a.threshold && decreasing;
        rep.push(vec![
            m.to_string(),
            n.to_string(),
            to_decimal(best.energy.real(), s.digits),
            top.n.to_string(),
            format!("{:.6}", top.log10_rel_err),
            format!("{:.6}", a.threshold),
            curve.oscillation_onset().map(|k| k.to_string()).unwrap_or_else(|| "none".into()),
            decreasing.to_string(),
            if ok { "pass" } else { "fail" }.to_string(),
        ]);
        if top.log10_rel_err > a.threshold {
            rep.fail(format!("{}: best log10 error {:.3} above {:.3}", p.label(), top.log10_rel_err, a.threshold));
        }
        if !decreasing {
            rep.fail(format!("{}: error does not decrease through N={}", p.label(), a.initial));
        }
    }
    Ok(rep)
}

pub fn profile(a: &ProfileArgs, s: &Settings) -> Result<Report> {
    let prec = s.precision;
    let p = model(&a.model, prec)?;
    let eps = match &a.eps {
        Some(e) => prec.parse_real(e)?,
        None => p.well_depth_scale(),
    };
    let line = ShiftedLine::new(eps)?;
    let shift = match a.shift {
        ShiftArg::None => ProfileShift::None,
        ShiftArg::WellBottom => ProfileShift::WellBottom,
    };
    let rows = p.shifted_profile(&line, &prec.parse_real(&a.s_min)?, &prec.parse_real(&a.s_max)?, a.samples, shift)?;
    let mut rep = Report::new(&["s", "re_u", "im_u"]);
    for line in profile_csv(&rows, s.digits).lines().skip(1) {
        rep.push(line.split(',').map(str::to_string).collect());
    }
    Ok(rep)
}
