use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, Precision, TruncatedSeries};
use crate::potentials::Potential;

/// Which Riccati equation the coefficients solve.
#[derive(Clone, Debug, PartialEq)]
pub enum RiccatiVariant {
    /// `f' - f^2 + V - E = 0` about a regular centre, `f = -psi'/psi`.
    General,
    /// `f' + 2 sigma f / x = f^2 + E - x^(2m)` about the origin for
    /// `x^(2m) + lambda/x^2`, `f = sigma/x - psi'/psi = x sum_j f_j x^(2j)`.
    Regularized { m: u32, sigma: Sigma },
}

/// Taylor coefficients of the logarithmic derivative for a trial `(E, f0)`.
#[derive(Clone, Debug)]
pub struct RiccatiCoefficients {
    pub center: BigComplex,
    /// `-psi'(x0)/psi(x0)`; absent for the regularized variant.
    pub f0: Option<BigComplex>,
    pub energy: BigComplex,
    pub coeffs: Vec<BigComplex>,
    pub variant: RiccatiVariant,
}

impl RiccatiCoefficients {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiply every coefficient by `c`; the Hankel zero locus is unchanged.
    pub fn scaled(&self, c: &BigComplex) -> Self {
        let mut out = self.clone();
        for f in &mut out.coeffs {
            *f *= c;
        }
        out
    }
}

/// The `+`/`-` root of `sigma (sigma - 1) = lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sigma {
    pub lambda: BigReal,
    pub value: BigReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SigmaBranch {
    /// `(1 + sqrt(1 + 4 lambda))/2 > 1`.
    Plus,
    /// `(1 - sqrt(1 + 4 lambda))/2 < 0`; the branch whose ground state is the
    /// level continued from the harmonic well at `-iR`.
    #[default]
    Minus,
}

impl Sigma {
    pub fn new(lambda: BigReal, branch: SigmaBranch) -> Result<Self> {
        if lambda <= 0 {
            return Err(Error::InvalidInput("lambda must be positive".into()));
        }
        let prec = lambda.prec();
        let disc = BigReal::with_val(prec, BigReal::with_val(prec, &lambda * 4u32) + 1u32).sqrt();
        let value = match branch {
            SigmaBranch::Plus => BigReal::with_val(prec, disc + 1u32) / 2u32,
            SigmaBranch::Minus => BigReal::with_val(prec, 1u32 - disc) / 2u32,
        };
        Ok(Sigma { lambda, value })
    }

    /// `sigma^2 - sigma - lambda`, zero up to rounding.
    pub fn defect(&self) -> BigReal {
        let prec = self.value.prec();
        let sq = BigReal::with_val(prec, self.value.square_ref());
        sq - &self.value - &self.lambda
    }
}

/// Coefficients `f_0..=f_K` of `f = -psi'/psi` about `x0` for trial `(E, f0)`,
/// from matching powers in `f' - f^2 + V - E = 0`:
/// `(j+1) f_{j+1} = sum_{k<=j} f_k f_{j-k} - V_j + E delta_{j0}`.
pub fn riccati_coeffs(
    potential: &Potential,
    x0: &BigComplex,
    energy: &BigComplex,
    f0: &BigComplex,
    order: usize,
) -> Result<RiccatiCoefficients> {
    let vs = potential.taylor_coeffs(x0, order)?;
    Ok(riccati_from_taylor(&vs, energy, f0, order))
}

/// Same recursion from precomputed potential coefficients.
pub(crate) fn riccati_from_taylor(
    vs: &TruncatedSeries,
    energy: &BigComplex,
    f0: &BigComplex,
    order: usize,
) -> RiccatiCoefficients {
    let prec = Precision::new(vs.center().prec().0).expect("potential precision is valid");
    let v = vs.coeffs();
    let mut f: Vec<BigComplex> = Vec::with_capacity(order + 1);
    f.push(prec.complex(f0));
    for j in 0..order {
        let mut acc = prec.zero();
        for k in 0..=j {
            acc += &f[k] * &f[j - k];
        }
        acc -= &v[j];
        if j == 0 {
            acc += energy;
        }
        acc /= (j + 1) as u32;
        f.push(acc);
    }
    RiccatiCoefficients {
        center: vs.center().clone(),
        f0: Some(f0.clone()),
        energy: energy.clone(),
        coeffs: f,
        variant: RiccatiVariant::General,
    }
}

/// Coefficients `f_0..=f_K` of the regularized expansion `f = x sum_j f_j x^(2j)`:
/// `(2j + 1 + 2 sigma) f_j = sum_{k<j} f_k f_{j-1-k} + E delta_{j0} - delta_{jm}`.
pub fn regularized_coeffs(m: u32, sigma: &Sigma, energy: &BigComplex, order: usize) -> RiccatiCoefficients {
    let prec = Precision::new(energy.prec().0).expect("energy precision is valid");
    let two_sigma = BigReal::with_val(prec.bits(), &sigma.value * 2u32);
    let mut f: Vec<BigComplex> = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let mut acc = prec.zero();
        for k in 0..j {
            acc += &f[k] * &f[j - 1 - k];
        }
        if j == 0 {
            acc += energy;
        }
        if j == m as usize {
            acc -= 1u32;
        }
        let denom = BigReal::with_val(prec.bits(), &two_sigma + (2 * j + 1) as u32);
        acc /= denom;
        f.push(acc);
    }
    RiccatiCoefficients {
        center: prec.zero(),
        f0: None,
        energy: energy.clone(),
        coeffs: f,
        variant: RiccatiVariant::Regularized { m, sigma: sigma.clone() },
    }
}

/// Coefficients of `f' - f^2 + V - E` through order `K-1` (general variant).
/// Every entry vanishes up to rounding for coefficients from [`riccati_coeffs`].
pub fn general_residual(potential: &Potential, rc: &RiccatiCoefficients) -> Result<Vec<BigComplex>> {
    let order = rc.coeffs.len() - 1;
    let f = TruncatedSeries::new(rc.center.clone(), rc.coeffs.clone())?;
    let fp = f.derivative()?;
    let f2 = f.mul(&f)?.truncate(order - 1);
    let v = potential.taylor_coeffs(&rc.center, order - 1)?;
    let mut res = fp.sub(&f2)?.add(&v)?.into_coeffs();
    res[0] -= &rc.energy;
    Ok(res)
}

/// Coefficients of `x^(2j)` in `f' + 2 sigma f/x - f^2 - E + x^(2m)`, `j <= K`,
/// for the regularized variant.
pub fn regularized_residual(rc: &RiccatiCoefficients) -> Result<Vec<BigComplex>> {
    let RiccatiVariant::Regularized { m, sigma } = &rc.variant else {
        return Err(Error::InvalidInput("coefficients are not from the regularized recursion".into()));
    };
    let prec = Precision::new(rc.energy.prec().0)?;
    let f = &rc.coeffs;
    let two_sigma = BigReal::with_val(prec.bits(), &sigma.value * 2u32);
    Ok((0..f.len())
        .map(|j| {
            // f' + 2 sigma f / x contributes (2j + 1 + 2 sigma) f_j at x^(2j).
            let mut r = BigComplex::with_val(prec.bits(), &f[j] * BigReal::with_val(prec.bits(), &two_sigma + (2 * j + 1) as u32));
            for k in 0..j {
                r -= &f[k] * &f[j - 1 - k];
            }
            if j == 0 {
                r -= &rc.energy;
            }
            if j == *m as usize {
                r += 1u32;
            }
            r
        })
        .collect())
}
