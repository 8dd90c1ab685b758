use super::family::{Family, Potential};
use crate::error::{Error, Result};
use crate::numerics::{abs, BigComplex, BigReal, Precision};

/// A complex root of `V'` with its curvature and admissibility verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaryPoint {
    pub location: BigComplex,
    pub second_derivative: BigComplex,
    /// `V''` real-positive to tolerance, and the point sits on the negative
    /// imaginary axis, where a shifted line `s - i eps` crosses it PT-symmetrically.
    pub admissible: bool,
}

impl StationaryPoint {
    fn classify(p: &Potential, location: BigComplex) -> Result<Self> {
        let prec = p.precision();
        let second_derivative = p.second_derivative(&location)?;
        let tol = prec.half_tolerance();
        let v2_abs = abs(&second_derivative);
        let real_positive = second_derivative.real().is_sign_positive()
            && !second_derivative.real().is_zero()
            && BigReal::with_val(prec.bits(), second_derivative.imag().abs_ref()) <= BigReal::with_val(prec.bits(), &tol * &v2_abs);
        let r = abs(&location);
        let on_lower_axis = location.imag().is_sign_negative()
            && BigReal::with_val(prec.bits(), location.real().abs_ref()) <= BigReal::with_val(prec.bits(), &tol * &r);
        Ok(StationaryPoint {
            admissible: real_positive && on_lower_axis,
            location,
            second_derivative,
        })
    }

    /// `|V'(x0)| / |V''(x0) x0|`.
    pub fn relative_residual(&self, p: &Potential) -> Result<BigReal> {
        let d1 = abs(&p.derivative(&self.location)?);
        let scale = abs(&self.second_derivative) * abs(&self.location);
        Ok(d1 / scale)
    }
}

/// `r e^{i pi num / den}`, exact on the axes.
fn polar(prec: Precision, r: &BigReal, num: i64, den: i64) -> BigComplex {
    let twice = 2 * den;
    let q = num.rem_euclid(twice);
    if (2 * q) % den == 0 {
        // multiple of pi/2
        return match (2 * q) / den {
            0 => prec.complex((r, 0)),
            1 => prec.complex((0, r)),
            2 => prec.complex((-r.clone(), 0)),
            _ => prec.complex((0, -r.clone())),
        };
    }
    let angle = prec.pi() * num / den;
    let (s, c) = angle.sin_cos(prec.real(0));
    prec.complex((BigReal::with_val(prec.bits(), r * c), BigReal::with_val(prec.bits(), r * s)))
}

impl Potential {
    /// Every closed-form root of `V'`.
    ///
    /// Integer family: `x0 = R e^{i pi k/(m+n)}`, `k = 0..2(m+n)`. Sextic: the
    /// eight roots `R e^{i pi (k-1)/4}`. Alpha-beta: `ix0 = T e^{i theta}` with
    /// `theta = 2 pi k / (8+alpha+beta)` inside the principal strip; the root
    /// on the cut is kept only when the exponents are integers.
    pub fn stationary_points(&self) -> Result<Vec<StationaryPoint>> {
        let prec = self.precision();
        let scale = self.well_depth_scale();
        let locations: Vec<BigComplex> = match self.family() {
            Family::Integer { m, n, .. } => {
                let s = (m + n) as i64;
                (0..2 * s).map(|k| polar(prec, &scale, k, s)).collect()
            }
            Family::ShiftedSextic { g } if g.is_zero() => vec![prec.zero()],
            Family::ShiftedSextic { .. } => (1..=8).map(|k| polar(prec, &scale, k - 1, 4)).collect(),
            Family::AlphaBeta { alpha, beta, .. } => {
                let period = prec.real(prec.real(alpha + beta) + 8u32);
                let single = self.is_single_valued();
                let mut out = Vec::new();
                // theta_k / pi = 2k / period, kept in (-1, 1] (or (-1, 1) with a cut).
                let kmax = (period.to_f64() / 2.0).ceil() as i64 + 1;
                for k in -kmax..=kmax {
                    let frac = prec.real(2 * k) / &period;
                    let on_cut = frac == 1;
                    if frac <= -1 || frac > 1 || (on_cut && !single) {
                        continue;
                    }
                    // x0 = -i T e^{i theta}
                    let ix0 = if k == 0 {
                        prec.complex((&scale, 0))
                    } else if on_cut {
                        prec.complex((-scale.clone(), 0))
                    } else {
                        let angle = prec.real(prec.pi() * &frac);
                        let (s, c) = angle.sin_cos(prec.real(0));
                        prec.complex((BigReal::with_val(prec.bits(), &scale * c), BigReal::with_val(prec.bits(), &scale * s)))
                    };
                    out.push(BigComplex::with_val(prec.bits(), ix0 * prec.complex((0, -1))));
                }
                out
            }
        };
        locations
            .into_iter()
            .map(|x| StationaryPoint::classify(self, x))
            .collect()
    }

    /// The unique admissible minimum (on the negative imaginary axis with
    /// real-positive curvature).
    pub fn admissible_minimum(&self) -> Result<StationaryPoint> {
        let points = self.stationary_points()?;
        let mut admissible = points.into_iter().filter(|p| p.admissible);
        match (admissible.next(), admissible.next()) {
            (Some(p), None) => Ok(p),
            (None, _) => Err(Error::NotAdmissible(format!(
                "{self}: no root of V' on the negative imaginary axis has real positive V''"
            ))),
            (Some(_), Some(_)) => Err(Error::NotAdmissible(format!("{self}: admissible minimum is not unique"))),
        }
    }
}
