use std::fmt;

use super::{BigComplex, Precision};
use crate::error::{Error, Result};

/// Power series `sum_j c_j (x - center)^j` truncated at a fixed order.
///
/// Operations never read past the declared order, so a product of two series
/// is only meaningful up to the smaller of the two orders.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    center: BigComplex,
    coeffs: Vec<BigComplex>,
}

impl TruncatedSeries {
    pub fn new(center: BigComplex, coeffs: Vec<BigComplex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a series needs at least one coefficient".into()));
        }
        Ok(TruncatedSeries { center, coeffs })
    }

    /// The zero series of the given order.
    pub fn zero(center: BigComplex, order: usize) -> Self {
        let prec = center.prec().0;
        TruncatedSeries {
            coeffs: vec![BigComplex::new(prec); order + 1],
            center,
        }
    }

    /// The constant series `value` of the given order.
    pub fn constant(center: BigComplex, value: BigComplex, order: usize) -> Self {
        let mut s = Self::zero(center, order);
        s.coeffs[0] = value;
        s
    }

    pub fn center(&self) -> &BigComplex {
        &self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigComplex> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&BigComplex> {
        self.coeffs.get(j)
    }

    pub fn precision(&self) -> Precision {
        Precision(self.center.prec().0)
    }

    /// Drop every coefficient above `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    fn check_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        Ok(())
    }

    /// Cauchy product truncated at `min(self.order, other.order)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let order = self.order().min(other.order());
        let prec = self.precision();
        let coeffs = (0..=order)
            .map(|j| {
                let mut acc = prec.zero();
                for k in 0..=j {
                    acc += &self.coeffs[k] * &other.coeffs[j - k];
                }
                acc
            })
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| BigComplex::with_val(self.precision().bits(), &self.coeffs[j] + &other.coeffs[j]))
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| BigComplex::with_val(self.precision().bits(), &self.coeffs[j] - &other.coeffs[j]))
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), coeffs })
    }

    pub fn scale(&self, factor: &BigComplex) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| BigComplex::with_val(self.precision().bits(), c * factor))
            .collect();
        TruncatedSeries { center: self.center.clone(), coeffs }
    }

    /// Term-by-term derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InvalidInput("cannot differentiate an order-0 series".into()));
        }
        let coeffs = (0..self.order())
            .map(|j| BigComplex::with_val(self.precision().bits(), &self.coeffs[j + 1] * (j as u32 + 1)))
            .collect();
        Ok(TruncatedSeries { center: self.center.clone(), coeffs })
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &BigComplex) -> BigComplex {
        let prec = self.precision().bits();
        let t = BigComplex::with_val(prec, x - &self.center);
        let mut acc = BigComplex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= &t;
            acc += c;
        }
        acc
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("center", &self.center.to_string_radix(10, Some(12)))
            .field(
                "coeffs",
                &self
                    .coeffs
                    .iter()
                    .map(|c| c.to_string_radix(10, Some(12)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(p: Precision, cs: &[i32]) -> TruncatedSeries {
        TruncatedSeries::new(p.zero(), cs.iter().map(|&c| p.complex(c)).collect()).unwrap()
    }

    #[test]
    fn telescoping_product() {
        let p = Precision::DEFAULT;
        let prod = series(p, &[1, 1, 0]).mul(&series(p, &[1, -1, 0])).unwrap();
        assert_eq!(prod, series(p, &[1, 0, -1]));
    }

    #[test]
    fn multiplicative_identity() {
        let p = Precision::DEFAULT;
        let a = series(p, &[3, -2, 7, 5]);
        let one = TruncatedSeries::constant(p.zero(), p.one(), 3);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn geometric_times_one_minus_x() {
        let p = Precision::DEFAULT;
        let prod = series(p, &[1, 1, 1, 1]).mul(&series(p, &[1, -1, 0, 0])).unwrap();
        assert_eq!(prod, series(p, &[1, 0, 0, 0]));
    }

    #[test]
    fn product_truncates_at_min_order() {
        let p = Precision::DEFAULT;
        let prod = series(p, &[1, 1, 1, 1, 1]).mul(&series(p, &[1, 1])).unwrap();
        assert_eq!(prod.order(), 1);
    }

    #[test]
    fn center_mismatch_rejected() {
        let p = Precision::DEFAULT;
        let a = series(p, &[1, 1]);
        let b = TruncatedSeries::new(p.one(), vec![p.one(), p.one()]).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::CenterMismatch)));
    }

    #[test]
    fn derivatives() {
        let p = Precision::DEFAULT;
        assert_eq!(series(p, &[0, 0, 1]).derivative().unwrap(), series(p, &[0, 2]));
        assert_eq!(series(p, &[4, 0]).derivative().unwrap(), series(p, &[0]));
        assert_eq!(series(p, &[3, 2, 0, 5]).derivative().unwrap(), series(p, &[2, 0, 15]));
        assert!(series(p, &[4]).derivative().is_err());
    }

    #[test]
    fn horner() {
        let p = Precision::DEFAULT;
        let s = series(p, &[1, 2, 3]);
        assert_eq!(s.eval(&p.complex(2)), p.complex(17));
    }
}
