use super::{partial_sums, EnergyEstimate};
use crate::error::{Error, Result};
use crate::numerics::{abs, BigComplex};
use crate::potentials::Potential;

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub log10_rel_err: f64,
}

/// `log10 |(E^[N] - E_ref) / E_ref|` for `N = 0..=N_max`.
#[derive(Clone, Debug)]
pub struct ErrorCurve {
    pub rows: Vec<ErrorRow>,
}

pub fn error_curve(potential: &Potential, v: u32, n_max: usize, reference: &EnergyEstimate) -> Result<ErrorCurve> {
    if reference.value.is_zero() {
        return Err(Error::InvalidInput("reference energy is zero; relative error undefined".into()));
    }
    let prec = potential.precision();
    let sums = partial_sums(potential, v, n_max)?;
    let ref_abs = abs(&reference.value);
    let rows = sums
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let diff = abs(&BigComplex::with_val(prec.bits(), &e.value - &reference.value));
            ErrorRow { n, log10_rel_err: (diff / &ref_abs).log10().to_f64() }
        })
        .collect();
    Ok(ErrorCurve { rows })
}

impl ErrorCurve {
    /// First `N` at which the error exceeds its value at `N - 2` and keeps
    /// doing so at `N + 2`.
    pub fn oscillation_onset(&self) -> Option<usize> {
        let e: Vec<f64> = self.rows.iter().map(|r| r.log10_rel_err).collect();
        (2..e.len().saturating_sub(2)).find(|&n| e[n] > e[n - 2] && e[n + 2] > e[n])
    }

    /// Row with the smallest error (first one on ties).
    pub fn best(&self) -> Option<&ErrorRow> {
        self.rows.iter().min_by(|a, b| a.log10_rel_err.total_cmp(&b.log10_rel_err))
    }

    /// True when the error at `to` is below the error at `0` and the even-order
    /// errors never rise over `0..=to`.
    pub fn decreases_until(&self, to: usize) -> bool {
        let e: Vec<f64> = self.rows.iter().take(to + 1).map(|r| r.log10_rel_err).collect();
        e.len() == to + 1 && e[to] < e[0] && e.iter().step_by(2).zip(e.iter().step_by(2).skip(1)).all(|(a, b)| b <= a)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,log10_rel_err\n");
        for r in &self.rows {
            out.push_str(&format!("{},{:.6}\n", r.n, r.log10_rel_err));
        }
        out
    }
}
