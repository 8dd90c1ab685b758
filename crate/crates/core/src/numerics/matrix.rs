use rug::ops::Pow;

use super::{abs, BigComplex, BigReal, Precision};
use crate::error::{Error, Result};

/// Dense square matrix of multiprecision complex entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<BigComplex>,
}

/// Determinant together with the rounding-floor verdict.
#[derive(Clone, Debug)]
pub struct Determinant {
    pub value: BigComplex,
    /// Largest entry modulus of the input matrix.
    pub scale: BigReal,
    /// `|det|` fell below `D * 2^(8 - prec) * scale^D`: indistinguishable from
    /// rounding noise at this precision.
    pub precision_limited: bool,
}

impl Determinant {
    /// `|det| / scale^D`: a size-independent residual for root finding.
    pub fn relative(&self, dim: usize) -> BigReal {
        let a = abs(&self.value);
        if self.scale.is_zero() {
            return a;
        }
        let s = BigReal::with_val(a.prec(), (&self.scale).pow(dim as u32));
        a / s
    }
}

impl SquareMatrix {
    pub fn new(dim: usize, entries: Vec<BigComplex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "{} entries cannot fill a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(SquareMatrix { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigComplex) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, entries)
    }

    pub fn identity(prec: Precision, dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { prec.one() } else { prec.zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigComplex {
        &self.entries[i * self.dim + j]
    }

    fn precision(&self) -> Precision {
        Precision(self.entries[0].prec().0)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let p = self.precision();
        Self::from_fn(self.dim, |i, j| {
            let mut acc = p.zero();
            for k in 0..self.dim {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone()).expect("same shape")
    }

    /// Apply a row permutation: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::InvalidInput("permutation length differs from dimension".into()));
        }
        Self::from_fn(self.dim, |i, j| self.get(perm[i], j).clone())
    }

    fn max_entry(&self) -> BigReal {
        super::max_abs(self.precision(), &self.entries)
    }

    fn report(&self, value: BigComplex) -> Determinant {
        let p = self.precision();
        let scale = self.max_entry();
        let mut floor = BigReal::with_val(p.bits(), (&scale).pow(self.dim as u32));
        floor *= self.dim as u32;
        floor >>= p.bits() as i32 - 8;
        let precision_limited = abs(&value) < floor;
        Determinant { value, scale, precision_limited }
    }

    /// Gaussian elimination with partial (row) pivoting.
    pub fn determinant(&self) -> Determinant {
        let value = eliminate(self.dim, self.entries.clone(), false);
        self.report(value)
    }

    /// Gaussian elimination with complete pivoting; an elimination order
    /// independent of [`SquareMatrix::determinant`].
    pub fn determinant_full_pivot(&self) -> Determinant {
        let value = eliminate(self.dim, self.entries.clone(), true);
        self.report(value)
    }
}

fn eliminate(n: usize, mut a: Vec<BigComplex>, full: bool) -> BigComplex {
    let prec = a[0].prec().0;
    let mut det = BigComplex::with_val(prec, 1);
    // Column order is tracked only for complete pivoting.
    for k in 0..n {
        let (mut pr, mut pc) = (k, k);
        let mut best = abs(&a[k * n + k]);
        let cols = if full { k..n } else { k..k + 1 };
        for c in cols {
            for r in k..n {
                let m = abs(&a[r * n + c]);
                if m > best {
                    best = m;
                    pr = r;
                    pc = c;
                }
            }
        }
        if best.is_zero() {
            return BigComplex::new(prec);
        }
        if pr != k {
            for c in 0..n {
                a.swap(k * n + c, pr * n + c);
            }
            det = -det;
        }
        if pc != k {
            for r in 0..n {
                a.swap(r * n + k, r * n + pc);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det *= &pivot;
        let inv = BigComplex::with_val(prec, 1) / &pivot;
        for r in k + 1..n {
            if a[r * n + k].is_zero() {
                continue;
            }
            let factor = BigComplex::with_val(prec, &a[r * n + k] * &inv);
            for c in k + 1..n {
                let t = BigComplex::with_val(prec, &factor * &a[k * n + c]);
                a[r * n + c] -= t;
            }
        }
    }
    det
}
