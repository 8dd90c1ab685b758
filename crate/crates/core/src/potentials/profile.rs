use super::family::Potential;
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, Precision};

/// The integration line `x(s) = s - i eps`, `s` real.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedLine {
    epsilon: BigReal,
}

impl ShiftedLine {
    pub fn new(epsilon: BigReal) -> Result<Self> {
        if epsilon <= 0 || !epsilon.is_finite() {
            return Err(Error::Singularity("the shift eps must be positive to avoid x = 0".into()));
        }
        Ok(ShiftedLine { epsilon })
    }

    pub fn epsilon(&self) -> &BigReal {
        &self.epsilon
    }

    pub fn point(&self, s: &BigReal, prec: Precision) -> BigComplex {
        prec.complex((s, -self.epsilon.clone()))
    }
}

/// Optional vertical offset of the emitted profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProfileShift {
    #[default]
    None,
    /// Subtract `Re U(0)` so the well bottom sits at zero (`W = 4R^2/3 + V`
    /// for the sextic on `eps = R`).
    WellBottom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub s: BigReal,
    pub re_u: BigReal,
    pub im_u: BigReal,
}

impl Potential {
    /// `U(s) = V(s - i eps)` on `samples` equally spaced points of `[s_min, s_max]`.
    pub fn shifted_profile(
        &self,
        line: &ShiftedLine,
        s_min: &BigReal,
        s_max: &BigReal,
        samples: usize,
        shift: ProfileShift,
    ) -> Result<Vec<ProfileRow>> {
        if samples < 2 {
            return Err(Error::InvalidInput("a profile needs at least two samples".into()));
        }
        if s_max <= s_min {
            return Err(Error::InvalidInput("s_max must exceed s_min".into()));
        }
        let prec = self.precision();
        let offset = match shift {
            ProfileShift::None => prec.real(0),
            ProfileShift::WellBottom => {
                let u0 = self.eval(&line.point(&prec.real(0), prec))?;
                u0.real().clone()
            }
        };
        let width = prec.real(s_max - s_min);
        (0..samples)
            .map(|k| {
                let s = prec.real(s_min + BigReal::with_val(prec.bits(), &width * k as u32) / (samples as u32 - 1));
                let u = self.eval(&line.point(&s, prec))?;
                let (re, im) = u.into_real_imag();
                Ok(ProfileRow { s, re_u: re - &offset, im_u: im })
            })
            .collect()
    }
}

/// Render rows as CSV with header `s,re_u,im_u`.
pub fn profile_csv(rows: &[ProfileRow], digits: usize) -> String {
    use crate::numerics::to_decimal;
    let mut out = String::from("s,re_u,im_u\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            to_decimal(&r.s, digits),
            to_decimal(&r.re_u, digits),
            to_decimal(&r.im_u, digits)
        ));
    }
    out
}
