use crate::error::{Error, Result};
use crate::numerics::{abs, BigComplex, BigReal, Precision};
use crate::potentials::{Potential, StationaryPoint};

/// `H = sqrt(V2) (-d^2/ds^2 + s^2 + sum_j c_j b^j s^(j+2))` about `x0`, with
/// `x = x0 + b s` and `b = V2^(-1/4)`.
#[derive(Clone, Debug)]
pub struct ScaledProblem {
    pub x0: BigComplex,
    pub v0: BigComplex,
    pub v2: BigComplex,
    pub b: BigReal,
    /// `c[j-1] = V_(j+2) / V2` for `j = 1..=J`.
    pub c: Vec<BigComplex>,
}

impl ScaledProblem {
    /// Scale `potential` about the stationary point `x0`, keeping `J = terms`
    /// perturbation coefficients.
    pub fn scale(potential: &Potential, x0: &StationaryPoint, terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidInput("need at least one perturbation term".into()));
        }
        if !x0.admissible {
            return Err(Error::NotAdmissible(format!(
                "{potential}: stationary point {} is not admissible",
                x0.location.to_string_radix(10, Some(12))
            )));
        }
        let prec = potential.precision();
        let t = potential.taylor_coeffs(&x0.location, terms + 2)?;
        let v = t.coeffs();
        let tol = prec.half_tolerance();
        let v2 = v[2].clone();
        let v2_abs = abs(&v2);
        // V1 relative to the curvature over the distance to the origin.
        let v1_scale = BigReal::with_val(prec.bits(), &v2_abs * abs(&x0.location).max(&prec.real(1)));
        if abs(&v[1]) > BigReal::with_val(prec.bits(), &tol * &v1_scale) {
            return Err(Error::NotStationary(abs(&v[1]).to_string_radix(10, Some(6))));
        }
        let imag = BigReal::with_val(prec.bits(), v2.imag().abs_ref());
        if !v2.real().is_sign_positive() || v2.real().is_zero() || imag > BigReal::with_val(prec.bits(), &tol * &v2_abs) {
            return Err(Error::NotAdmissible(format!("{potential}: V2 is not real-positive")));
        }
        let b = BigReal::with_val(prec.bits(), v2.real().sqrt_ref()).sqrt().recip();
        let c = v[3..].iter().map(|vj| BigComplex::with_val(prec.bits(), vj / &v2)).collect();
        Ok(ScaledProblem { x0: x0.location.clone(), v0: v[0].clone(), v2, b, c })
    }

    /// Scale about the admissible minimum.
    pub fn at_minimum(potential: &Potential, terms: usize) -> Result<Self> {
        Self::scale(potential, &potential.admissible_minimum()?, terms)
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.b.prec()).expect("scaled problem precision is valid")
    }

    pub fn terms(&self) -> usize {
        self.c.len()
    }

    /// `sqrt(V2)`, the unit of `epsilon`.
    pub fn sqrt_v2(&self) -> BigComplex {
        BigComplex::with_val(self.b.prec(), self.v2.sqrt_ref())
    }
}
