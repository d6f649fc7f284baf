//! Traces of Hecke operators on level-1 cusp forms, computed from q-expansions.
//!
//! This is an exact oracle that shares no code with the class-number side of
//! the trace formula: it builds the Miller basis of `S_k` from `E_4`, `E_6` and
//! `Delta`, then reads off `Tr T_n = sum_i a_i(T_n f_i)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest weight the oracle is exercised at.
pub const MAX_WEIGHT: u32 = 40;
/// Largest Hecke index the oracle is exercised at.
pub const MAX_HECKE_INDEX: u64 = 60;

/// Integer power series truncated to `prec` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); prec],
        }
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = BigInt::one();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(other.prec());
        let mut out = Self::zero(prec);
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> PowerSeries {
        (0..e).fold(Self::one(self.prec()), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(other.prec());
        PowerSeries::new(
            (0..prec)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        )
    }

    /// Divides every coefficient by `d`, or `None` if some division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Option<PowerSeries> {
        self.coeffs
            .iter()
            .map(|c| {
                let (quo, rem) = c.div_rem(d);
                rem.is_zero().then_some(quo)
            })
            .collect::<Option<Vec<_>>>()
            .map(PowerSeries::new)
    }
}

fn sigma(power: u32, n: u64) -> BigInt {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| BigInt::from(d).pow(power))
        .sum()
}

fn eisenstein(constant: i64, power: u32, prec: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(prec);
    if prec > 0 {
        coeffs.push(BigInt::one());
    }
    for n in 1..prec {
        coeffs.push(BigInt::from(constant) * sigma(power, n as u64));
    }
    PowerSeries::new(coeffs)
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(prec: usize) -> PowerSeries {
    eisenstein(240, 3, prec)
}

/// `E_6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein_e6(prec: usize) -> PowerSeries {
    eisenstein(-504, 5, prec)
}

/// `Delta = (E_4^3 - E_6^2) / 1728`; the division is checked to be exact.
pub fn delta(prec: usize) -> PowerSeries {
    let e4 = eisenstein_e4(prec);
    let e6 = eisenstein_e6(prec);
    e4.pow(3)
        .sub(&e6.pow(2))
        .exact_div(&BigInt::from(1728))
        .expect("E4^3 - E6^2 is divisible by 1728")
}

/// Dimension of `S_k` for level 1.
pub fn dim_sk(k: u32) -> Result<usize> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidWeight(k));
    }
    let base = (k / 12) as usize;
    Ok(if k % 12 == 2 { base - 1 } else { base })
}

/// Echelon basis of `S_k`: `a_j(f_i) = delta_ij` for `1 <= i, j <= dim`.
#[derive(Clone, Debug)]
pub struct CuspBasis {
    k: u32,
    basis: Vec<PowerSeries>,
}

impl CuspBasis {
    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn prec(&self) -> usize {
        self.basis.first().map_or(usize::MAX, PowerSeries::prec)
    }

    pub fn basis(&self) -> &[PowerSeries] {
        &self.basis
    }

    /// `sum_i a_i(T_n f_i)` with `a_m(T_n f) = sum_{d | gcd(m,n)} d^{k-1} a_{mn/d^2}(f)`.
    pub fn hecke_trace(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidHeckeIndex);
        }
        let need = self.dim() * n as usize + 1;
        if self.dim() > 0 && self.prec() < need {
            return Err(Error::InsufficientPrecision {
                got: self.prec(),
                need,
            });
        }
        let mut trace = BigInt::zero();
        for (idx, f) in self.basis.iter().enumerate() {
            let m = idx as u64 + 1;
            let g = m.gcd(&n);
            for d in (1..=g).filter(|d| g % d == 0) {
                let index = (m * n / (d * d)) as usize;
                trace += BigInt::from(d).pow(self.k - 1) * f.coeff(index);
            }
        }
        Ok(trace)
    }
}

/// Miller basis from the monomials `Delta^i E_4^a E_6^b`, `4a + 6b = k - 12i`,
/// echelonized over the rationals and checked to be integral.
pub fn miller_basis(k: u32, prec: usize) -> Result<CuspBasis> {
    let dim = dim_sk(k)?;
    if prec < dim + 1 {
        return Err(Error::InsufficientPrecision {
            got: prec,
            need: dim + 1,
        });
    }
    if dim == 0 {
        return Ok(CuspBasis { k, basis: Vec::new() });
    }
    let e4 = eisenstein_e4(prec);
    let e6 = eisenstein_e6(prec);
    let delta = delta(prec);

    let mut rows: Vec<Vec<BigRational>> = (1..=dim as u32)
        .map(|i| {
            let w = k - 12 * i;
            let (a, b) = if w % 4 == 0 { (w / 4, 0) } else { ((w - 6) / 4, 1) };
            let f = delta.pow(i).mul(&e4.pow(a)).mul(&e6.pow(b));
            f.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();

    // Gauss-Jordan on columns 1..=dim
    for col in 1..=dim {
        let pivot_row = (col - 1..dim)
            .find(|&r| !rows[r][col].is_zero())
            .expect("Miller monomials have independent leading terms");
        rows.swap(col - 1, pivot_row);
        let pivot = rows[col - 1][col].clone();
        for c in rows[col - 1].iter_mut() {
            *c = &*c / &pivot;
        }
        let pivot_vals = rows[col - 1].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col - 1 || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, pv) in row.iter_mut().zip(&pivot_vals) {
                *c = &*c - &factor * pv;
            }
        }
    }

    let basis = rows
        .into_iter()
        .map(|row| {
            let coeffs = row
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "level-1 Miller basis must be integral");
                    c.to_integer()
                })
                .collect();
            PowerSeries::new(coeffs)
        })
        .collect();
    Ok(CuspBasis { k, basis })
}

/// Precision needed for `T_n`: `n dim + dim + 1`.
pub fn default_precision(k: u32, n: u64) -> Result<usize> {
    let dim = dim_sk(k)?;
    Ok(n as usize * dim + dim + 1)
}

/// `Tr T_n` on `S_k(SL_2(Z))`.
pub fn trace_tk_mf(k: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidHeckeIndex);
    }
    miller_basis(k, default_precision(k, n)?)?.hecke_trace(n)
}

/// `|trace| <= dim sigma_0(n) n^{(k-1)/2}`, checked exactly by squaring.
pub fn deligne_bound_holds(trace: &BigInt, k: u32, n: u64, dim: usize) -> bool {
    let divisors = (1..=n).filter(|d| n % d == 0).count();
    let coeff = BigInt::from(dim * divisors);
    trace.abs().pow(2) <= &coeff * &coeff * BigInt::from(n).pow(k - 1)
}
