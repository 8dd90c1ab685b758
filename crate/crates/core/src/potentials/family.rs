use std::fmt;

use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::numerics::{abs, binomial, powi, BigComplex, BigReal, Precision, TruncatedSeries};

/// Parameters of one of the supported families.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `x^(2m) + lambda / x^(2n)` with `lambda = m R^(2(m+n)) / n`.
    Integer { m: u32, n: u32, r: BigReal },
    /// `-(ix)^(2+alpha) - g^2 / (ix)^(6+beta)`.
    AlphaBeta { alpha: BigReal, beta: BigReal, g: BigReal },
    /// `x^2 + g^2 / x^6`.
    ShiftedSextic { g: BigReal },
}

#[derive(Clone, Debug, PartialEq)]
enum Exponent {
    /// Acts on `x`.
    Integer(i64),
    /// Acts on `ix` with the principal branch.
    RealOfIx(BigReal),
}

/// `coef * x^k` or `coef * (ix)^p`.
#[derive(Clone, Debug, PartialEq)]
struct PowerTerm {
    coef: BigComplex,
    exponent: Exponent,
}

/// A validated potential at a fixed working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    family: Family,
    prec: Precision,
    terms: Vec<PowerTerm>,
}

impl Potential {
    /// `x^(2m) + lambda / x^(2n)`; `m` and `n` must be odd (so `m + n` is even
    /// and the root `-iR` is a minimum).
    pub fn integer(m: u32, n: u32, r: BigReal, prec: Precision) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput("m and n must be positive".into()));
        }
        if m % 2 == 0 || n % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "m = {m}, n = {n}: both exponents must be odd for V''(-iR) to be real and positive"
            )));
        }
        if r <= 0 || !r.is_finite() {
            return Err(Error::InvalidInput("R must be positive".into()));
        }
        let r = prec.real(&r);
        let lambda = integer_lambda(m, n, &r);
        let terms = vec![
            PowerTerm { coef: prec.one(), exponent: Exponent::Integer(2 * m as i64) },
            PowerTerm { coef: prec.complex(&lambda), exponent: Exponent::Integer(-2 * n as i64) },
        ];
        Ok(Potential { family: Family::Integer { m, n, r }, prec, terms })
    }

    pub fn alpha_beta(alpha: BigReal, beta: BigReal, g: BigReal, prec: Precision) -> Result<Self> {
        if alpha < 0 || beta < 0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput("alpha and beta must be finite and non-negative".into()));
        }
        if g <= 0 || !g.is_finite() {
            return Err(Error::InvalidInput("g must be positive".into()));
        }
        let (alpha, beta, g) = (prec.real(&alpha), prec.real(&beta), prec.real(&g));
        let g2 = prec.real(g.square_ref());
        let terms = vec![
            PowerTerm { coef: prec.complex(-1), exponent: Exponent::RealOfIx(prec.real(&alpha + 2u32)) },
            PowerTerm { coef: prec.complex(-g2), exponent: Exponent::RealOfIx(-prec.real(&beta + 6u32)) },
        ];
        Ok(Potential { family: Family::AlphaBeta { alpha, beta, g }, prec, terms })
    }

    /// `x^2 + g^2 / x^6`; equal to `integer(1, 3, R)` with `R = 3^(1/8) g^(1/4)`.
    pub fn shifted_sextic(g: BigReal, prec: Precision) -> Result<Self> {
        if g <= 0 || !g.is_finite() {
            return Err(Error::InvalidInput("g must be positive".into()));
        }
        let g = prec.real(&g);
        let g2 = prec.real(g.square_ref());
        let terms = vec![
            PowerTerm { coef: prec.one(), exponent: Exponent::Integer(2) },
            PowerTerm { coef: prec.complex(g2), exponent: Exponent::Integer(-6) },
        ];
        Ok(Potential { family: Family::ShiftedSextic { g }, prec, terms })
    }

    /// Pure harmonic `x^2` (used to test the Riccati machinery).
    pub fn harmonic(prec: Precision) -> Self {
        Potential {
            family: Family::ShiftedSextic { g: prec.real(0) },
            prec,
            terms: vec![PowerTerm { coef: prec.one(), exponent: Exponent::Integer(2) }],
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// The same potential rebuilt at another precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        let rebuilt = match &self.family {
            Family::Integer { m, n, r } => Potential::integer(*m, *n, r.clone(), prec),
            Family::AlphaBeta { alpha, beta, g } => Potential::alpha_beta(alpha.clone(), beta.clone(), g.clone(), prec),
            Family::ShiftedSextic { g } if g.is_zero() => Ok(Potential::harmonic(prec)),
            Family::ShiftedSextic { g } => Potential::shifted_sextic(g.clone(), prec),
        };
        rebuilt.expect("parameters were validated at construction")
    }

    /// Coupling of the inverse-power term: `lambda` for the integer family,
    /// `g^2` otherwise.
    pub fn lambda(&self) -> BigReal {
        match &self.family {
            Family::Integer { m, n, r } => integer_lambda(*m, *n, r),
            Family::AlphaBeta { g, .. } | Family::ShiftedSextic { g } => self.prec.real(g.square_ref()),
        }
    }

    /// Natural length scale `|x0|` of the admissible minimum: `R` for the
    /// integer family, `T` for the alpha-beta family, `3^(1/8) g^(1/4)` for
    /// the sextic.
    pub fn well_depth_scale(&self) -> BigReal {
        let p = self.prec;
        match &self.family {
            Family::Integer { r, .. } => r.clone(),
            Family::AlphaBeta { alpha, beta, g } => {
                // T^(8+a+b) = g^2 (6+b)/(2+a)
                let rhs = p.real(g.square_ref()) * p.real(beta + 6u32) / p.real(alpha + 2u32);
                let expo = p.real(1) / p.real(p.real(alpha + beta) + 8u32);
                p.real(rhs.ln() * expo).exp()
            }
            Family::ShiftedSextic { g } => {
                let g2 = p.real(g.square_ref()) * 3u32;
                g2.root(8)
            }
        }
    }

    /// The same family with its well-depth scale (`R` or `T`) set to `scale`;
    /// the continuation parameter for root tracking.
    pub fn rescaled(&self, scale: &BigReal) -> Result<Self> {
        let p = self.prec;
        match &self.family {
            Family::Integer { m, n, .. } => Potential::integer(*m, *n, scale.clone(), p),
            Family::ShiftedSextic { g } if g.is_zero() => Ok(self.clone()),
            Family::ShiftedSextic { .. } => {
                // R^8 = 3 g^2
                let g = p.real(scale.clone().pow(4u32)) / p.real(3).sqrt();
                Potential::shifted_sextic(g, p)
            }
            Family::AlphaBeta { alpha, beta, .. } => {
                let expo = p.real(p.real(alpha + beta) + 8u32);
                let g2 = p.real(scale.clone().pow(&expo)) * p.real(alpha + 2u32) / p.real(beta + 6u32);
                Potential::alpha_beta(alpha.clone(), beta.clone(), g2.sqrt(), p)
            }
        }
    }

    /// True when every exponent is an integer, so no branch cut exists.
    pub(crate) fn is_single_valued(&self) -> bool {
        self.terms.iter().all(|t| match &t.exponent {
            Exponent::Integer(_) => true,
            Exponent::RealOfIx(p) => p.is_integer(),
        })
    }

    /// True when every term is a non-negative integer power of `x`.
    fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| matches!(t.exponent, Exponent::Integer(k) if k >= 0))
    }

    fn check_point(&self, x: &BigComplex) -> Result<()> {
        if x.is_zero() && !self.is_polynomial() {
            return Err(Error::Singularity("the potential is singular at x = 0".into()));
        }
        if !self.is_single_valued() && x.real().is_zero() && x.imag().is_sign_positive() {
            return Err(Error::BranchCut(format!(
                "x = {} lies on the upward imaginary cut",
                x.to_string_radix(10, Some(12))
            )));
        }
        Ok(())
    }

    /// `V(x)` under the principal-branch convention.
    pub fn eval(&self, x: &BigComplex) -> Result<BigComplex> {
        self.check_point(x)?;
        let p = self.prec;
        let mut acc = p.zero();
        for t in &self.terms {
            acc += BigComplex::with_val(p.bits(), &t.coef * term_power(t, x, p));
        }
        Ok(acc)
    }

    /// Taylor coefficients `V_j`, `j = 0..=order`, of `V(x0 + t)` in powers of `t`.
    pub fn taylor_coeffs(&self, x0: &BigComplex, order: usize) -> Result<TruncatedSeries> {
        let p = self.prec;
        if self.is_polynomial() {
            let mut coeffs = vec![p.zero(); order + 1];
            for t in &self.terms {
                let Exponent::Integer(k) = t.exponent else { unreachable!("polynomial terms") };
                // (x0 + t)^k = sum_j C(k, j) x0^(k-j) t^j
                for (j, c) in coeffs.iter_mut().enumerate().take(k as usize + 1) {
                    let b = binomial(&p.real(k), j);
                    *c += BigComplex::with_val(p.bits(), &t.coef * powi(x0, k - j as i64)) * b;
                }
            }
            return TruncatedSeries::new(x0.clone(), coeffs);
        }
        if abs(x0) < p.half_tolerance() {
            return Err(Error::Singularity(format!(
                "expansion centre {} is too close to the origin",
                x0.to_string_radix(10, Some(12))
            )));
        }
        self.check_point(x0)?;
        let mut coeffs = vec![p.zero(); order + 1];
        let inv_x0 = BigComplex::with_val(p.bits(), 1) / x0;
        for t in &self.terms {
            // (x0 + t)^k = x0^k (1 + t/x0)^k, same for (i(x0 + t))^p.
            let base = BigComplex::with_val(p.bits(), &t.coef * term_power(t, x0, p));
            let expo = match &t.exponent {
                Exponent::Integer(k) => p.real(*k),
                Exponent::RealOfIx(q) => q.clone(),
            };
            let mut inv_pow = p.one();
            for (j, c) in coeffs.iter_mut().enumerate() {
                let b = binomial(&expo, j);
                *c += BigComplex::with_val(p.bits(), &base * &inv_pow) * b;
                inv_pow *= &inv_x0;
            }
        }
        TruncatedSeries::new(x0.clone(), coeffs)
    }

    /// `V'(x)`.
    pub fn derivative(&self, x: &BigComplex) -> Result<BigComplex> {
        let s = self.taylor_coeffs(x, 1)?;
        Ok(s.coeffs()[1].clone())
    }

    /// `V''(x)`.
    pub fn second_derivative(&self, x: &BigComplex) -> Result<BigComplex> {
        let s = self.taylor_coeffs(x, 2)?;
        Ok(BigComplex::with_val(self.prec.bits(), &s.coeffs()[2] * 2u32))
    }

    /// Short label such as `int(m=1,n=3,R=2)`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |x: &BigReal| crate::numerics::to_decimal(x, 12);
        match &self.family {
            Family::Integer { m, n, r } => write!(f, "int(m={m},n={n},R={})", d(r)),
            Family::AlphaBeta { alpha, beta, g } => write!(f, "ab(alpha={},beta={},g={})", d(alpha), d(beta), d(g)),
            Family::ShiftedSextic { g } if g.is_zero() => write!(f, "harmonic"),
            Family::ShiftedSextic { g } => write!(f, "sextic(g={})", d(g)),
        }
    }
}

fn integer_lambda(m: u32, n: u32, r: &BigReal) -> BigReal {
    let mut lambda = BigReal::with_val(r.prec(), r.pow(2 * (m + n)));
    lambda *= m;
    lambda /= n;
    lambda
}

fn term_power(t: &PowerTerm, x: &BigComplex, p: Precision) -> BigComplex {
    match &t.exponent {
        Exponent::Integer(k) => powi(x, *k),
        Exponent::RealOfIx(q) => {
            if q.is_integer() {
                let ix = BigComplex::with_val(p.bits(), x * p.i());
                powi(&ix, q.to_f64() as i64)
            } else {
                let ix = BigComplex::with_val(p.bits(), x * p.i());
                let log = ix.ln();
                BigComplex::with_val(p.bits(), log * q).exp()
            }
        }
    }
}
