use super::riccati::RiccatiCoefficients;
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, Determinant, SquareMatrix};

/// Which subsequence of the Riccati coefficients fills the Hankel matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `|f_{2(i+j+d-1)}|`, `i, j = 1..D`.
    Even,
    /// `|f_{2(i+j+d-1)+1}|`.
    Odd,
    /// `|f_{i+j+d+1}|`, the regularized variant.
    Plain,
}

impl Parity {
    /// Coefficient index of entry `(i, j)` (1-based).
    pub fn index(self, i: usize, j: usize, d: usize) -> usize {
        match self {
            Parity::Even => 2 * (i + j + d - 1),
            Parity::Odd => 2 * (i + j + d - 1) + 1,
            Parity::Plain => i + j + d + 1,
        }
    }

    /// Highest coefficient order read by a `D x D` determinant.
    pub fn required_order(self, dim: usize, d: usize) -> usize {
        self.index(dim, dim, d)
    }
}

/// Hankel system of dimension `D` and displacement `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HankelSystem {
    pub dim: usize,
    pub displacement: usize,
    pub variant: HankelVariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HankelVariant {
    /// Paired even/odd determinants in `(E, f0)`.
    General,
    /// Single plain determinant in `E`.
    Regularized,
}

impl HankelSystem {
    pub fn new(dim: usize, displacement: usize, variant: HankelVariant) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("Hankel dimension D must be at least 1".into()));
        }
        Ok(HankelSystem { dim, displacement, variant })
    }

    /// Number of Riccati coefficients beyond `f_0` that must be generated.
    pub fn coefficient_demand(&self) -> usize {
        match self.variant {
            HankelVariant::General => Parity::Odd.required_order(self.dim, self.displacement),
            HankelVariant::Regularized => Parity::Plain.required_order(self.dim, self.displacement),
        }
    }
}

pub fn hankel_matrix(rc: &RiccatiCoefficients, dim: usize, d: usize, parity: Parity) -> Result<SquareMatrix> {
    if dim == 0 {
        return Err(Error::InvalidInput("Hankel dimension D must be at least 1".into()));
    }
    let required = parity.required_order(dim, d);
    if rc.coeffs.len() <= required {
        return Err(Error::InsufficientCoefficients { required: required + 1, available: rc.coeffs.len() });
    }
    SquareMatrix::from_fn(dim, |i, j| rc.coeffs[parity.index(i + 1, j + 1, d)].clone())
}

/// Determinant of the `D x D` Hankel matrix on the chosen subsequence.
pub fn hankel_det(rc: &RiccatiCoefficients, dim: usize, d: usize, parity: Parity) -> Result<Determinant> {
    Ok(hankel_matrix(rc, dim, d, parity)?.determinant())
}

/// Value-only convenience wrapper.
pub fn hankel_value(rc: &RiccatiCoefficients, dim: usize, d: usize, parity: Parity) -> Result<BigComplex> {
    Ok(hankel_det(rc, dim, d, parity)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{abs, Precision};
    use crate::potentials::Potential;
    use crate::rpm::riccati::{riccati_coeffs, RiccatiVariant};

    #[test]
    fn index_maps() {
        assert_eq!(Parity::Even.index(1, 1, 0), 2);
        assert_eq!(Parity::Odd.index(1, 1, 0), 3);
        assert_eq!(Parity::Plain.index(1, 1, 0), 3);
        assert_eq!(Parity::Even.required_order(3, 1), 12);
        let sys = HankelSystem::new(2, 0, HankelVariant::General).unwrap();
        assert_eq!(sys.coefficient_demand(), 7);
    }

    #[test]
    fn harmonic_determinants_vanish() {
        let p = Precision::DEFAULT;
        let v = Potential::harmonic(p);
        let rc = riccati_coeffs(&v, &p.zero(), &p.one(), &p.zero(), 40).unwrap();
        for dim in 1..5 {
            for d in 0..3 {
                for parity in [Parity::Even, Parity::Odd, Parity::Plain] {
                    assert!(hankel_value(&rc, dim, d, parity).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn too_few_coefficients() {
        let p = Precision::DEFAULT;
        let v = Potential::harmonic(p);
        let rc = riccati_coeffs(&v, &p.zero(), &p.one(), &p.zero(), 5).unwrap();
        let err = hankel_det(&rc, 3, 0, Parity::Even).unwrap_err();
        assert!(matches!(err, Error::InsufficientCoefficients { required: 11, available: 6 }));
    }

    #[test]
    fn plain_two_by_two_by_hand() {
        let p = Precision::DEFAULT;
        let coeffs: Vec<_> = (0..8).map(|k| p.complex(k * k + 1)).collect();
        let rc = RiccatiCoefficients {
            center: p.zero(),
            f0: None,
            energy: p.zero(),
            coeffs,
            variant: RiccatiVariant::General,
        };
        // entries f3 f4 / f4 f5 = 10 17 / 17 26 -> 260 - 289 = -29
        let det = hankel_value(&rc, 2, 0, Parity::Plain).unwrap();
        assert!(abs(&(det + 29u32)) < p.pow2_neg(240));
    }
}
