//! Multiprecision substrate: real/complex scalars, truncated power series,
//! dense determinants and a small Newton solver.
//!
//! Scalars are MPFR/MPC numbers through [`rug`]. Every value carries its own
//! precision; the helpers here build values at a [`Precision`] chosen once per
//! solve so that mixed-precision arithmetic does not creep in.

mod matrix;
mod newton;
mod series;

pub use matrix::{Determinant, SquareMatrix};
pub use newton::{newton_solve, NewtonOptions, NewtonOutcome};
pub use series::TruncatedSeries;

use rug::float::Round;
use rug::ops::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type BigReal = rug::Float;
pub type BigComplex = rug::Complex;

/// Working precision in bits (at least 64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT: Precision = Precision(256);

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::PrecisionTooLow(bits));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Precision with room for `digits` significant decimal digits.
    pub fn for_decimal_digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        Precision(bits.max(Self::MIN_BITS))
    }

    pub fn decimal_digits(self) -> u32 {
        (self.0 as f64 / std::f64::consts::LOG2_10).floor() as u32
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    pub fn real<T>(self, v: T) -> BigReal
    where
        BigReal: rug::Assign<T>,
    {
        BigReal::with_val(self.0, v)
    }

    pub fn complex<T>(self, v: T) -> BigComplex
    where
        BigComplex: rug::Assign<T>,
    {
        BigComplex::with_val(self.0, v)
    }

    pub fn zero(self) -> BigComplex {
        BigComplex::new(self.0)
    }

    pub fn one(self) -> BigComplex {
        self.complex(1)
    }

    pub fn i(self) -> BigComplex {
        self.complex((0, 1))
    }

    pub fn pi(self) -> BigReal {
        self.real(rug::float::Constant::Pi)
    }

    /// `2^(-k)` at this precision.
    pub fn pow2_neg(self, k: i32) -> BigReal {
        let mut v = self.real(1);
        v >>= k;
        v
    }

    /// `2^(-bits/2)`: tolerance for quantities that are real or zero
    /// analytically and only pick up rounding noise.
    pub fn half_tolerance(self) -> BigReal {
        self.pow2_neg((self.0 / 2) as i32)
    }

    /// Parse a decimal literal (e.g. `"-530.50539390089880261"`).
    pub fn parse_real(self, s: &str) -> Result<BigReal> {
        let parsed = BigReal::parse(s.trim())
            .map_err(|e| Error::InvalidInput(format!("cannot parse {s:?} as a number: {e}")))?;
        Ok(BigReal::with_val(self.0, parsed))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

impl TryFrom<u32> for Precision {
    type Error = Error;
    fn try_from(bits: u32) -> Result<Self> {
        Precision::new(bits)
    }
}

impl From<Precision> for u32 {
    fn from(p: Precision) -> u32 {
        p.0
    }
}

/// Modulus of a complex number.
pub fn abs(z: &BigComplex) -> BigReal {
    BigReal::with_val(z.prec().0, z.abs_ref())
}

/// Largest modulus in a list (zero for an empty list at `prec`).
pub fn max_abs<'a>(prec: Precision, zs: impl IntoIterator<Item = &'a BigComplex>) -> BigReal {
    zs.into_iter().map(abs).fold(prec.real(0), |acc, a| if a > acc { a } else { acc })
}

/// Relative distance `|a - b| / |b|` (absolute when `b == 0`).
pub fn rel_err(a: &BigComplex, b: &BigComplex) -> BigReal {
    let diff = BigComplex::with_val(a.prec().0, a - b);
    let num = abs(&diff);
    let den = abs(b);
    if den.is_zero() {
        num
    } else {
        num / den
    }
}

/// Real binomial coefficient `C(p, j) = p (p-1) ... (p-j+1) / j!` for any real `p`.
pub fn binomial(p: &BigReal, j: usize) -> BigReal {
    let mut c = BigReal::with_val(p.prec(), 1);
    for k in 0..j {
        let term = BigReal::with_val(p.prec(), p - k as u32);
        c *= term;
        c /= (k + 1) as u32;
    }
    c
}

/// Exact integer power of a complex number (negative exponents allowed).
pub fn powi(z: &BigComplex, k: i64) -> BigComplex {
    let prec = z.prec().0;
    if k >= 0 {
        BigComplex::with_val(prec, z.pow(k as u64))
    } else {
        let pos = BigComplex::with_val(prec, z.pow((-k) as u64));
        BigComplex::with_val(prec, 1) / pos
    }
}

/// Format with `digits` significant decimal digits in plain notation
/// without trailing zeros (`-530.50539390089880261`, `0.00123`). Very large
/// or small magnitudes fall back to scientific notation.
pub fn to_decimal(x: &BigReal, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits.max(1)), Round::Nearest);
    let exp = exp.unwrap_or(0);
    // Trailing zeros carry no information; x != 0 keeps one digit.
    let mantissa = mantissa.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    // value = 0.mantissa * 10^exp
    if exp > 40 || exp < -30 {
        out.push_str(&mantissa[..1]);
        if mantissa.len() > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
        return out;
    }
    if exp <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-exp) as usize));
        out.push_str(&mantissa);
    } else {
        let e = exp as usize;
        if mantissa.len() <= e {
            out.push_str(&mantissa);
            out.extend(std::iter::repeat('0').take(e - mantissa.len()));
        } else {
            out.push_str(&mantissa[..e]);
            out.push('.');
            out.push_str(&mantissa[e..]);
        }
    }
    out
}

/// Format a complex number as `(re, im)` decimal strings.
pub fn complex_to_decimal(z: &BigComplex, digits: usize) -> (String, String) {
    (to_decimal(z.real(), digits), to_decimal(z.imag(), digits))
}

/// Significant decimal digits to print for a given precision.
pub fn printable_digits(prec: Precision) -> usize {
    prec.decimal_digits().saturating_sub(2).max(17) as usize
}

/// Number of leading significant digits on which `computed` and `reference`
/// agree after rounding both to `width` significant digits.
pub fn matching_digits(computed: &BigReal, reference: &BigReal, width: usize) -> usize {
    if computed.is_zero() || reference.is_zero() {
        return usize::from(computed.is_zero() && reference.is_zero()) * width;
    }
    let (na, ma, ea) = computed.to_sign_string_exp_round(10, Some(width), Round::Nearest);
    let (nb, mb, eb) = reference.to_sign_string_exp_round(10, Some(width), Round::Nearest);
    if na != nb || ea != eb {
        return 0;
    }
    ma.chars().zip(mb.chars()).take_while(|(a, b)| a == b).count()
}
