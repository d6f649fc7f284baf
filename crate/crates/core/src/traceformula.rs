//! The Eichler-Selberg trace formula on level-1 cusp forms, evaluated exactly
//! from Hurwitz class numbers, and the class-number/Chebyshev sums it controls.
//!
//! For even `k >= 4` and `q = p^r`:
//!
//! ```text
//! Tr T_k(q) = (k-1)/12 q^{(k-2)/2} [q square]
//!           - 1/2 sum_{t^2 < 4q} w_{k-1}(t, q) H(4q - t^2)
//!           - 1/2 sum_{dd' = q} min(d, d')^{k-1}
//! ```

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::chebyshev::lucas_w_all;
use crate::classnumber::hurwitz;
use crate::curves::{trace_bound, TraceHistogram};
use crate::error::{Error, Result};
use crate::ff::prime_power;
use crate::modforms::dim_sk;

/// Empirical constant bounding `|sum H U_{k-2}| / (r k sqrt q)`.
pub const HURWITZ_CHEB_CONSTANT: f64 = 3.0;
/// Empirical constant bounding `|sum_{a,b} U_m| / (r m q^{3/2})` for even `m`.
pub const CURVE_CHEB_CONSTANT: f64 = 3.0;

#[derive(Clone, Debug, PartialEq)]
pub struct EsBreakdown {
    pub k: u32,
    pub q: u64,
    pub square_term: BigRational,
    pub elliptic_term: BigRational,
    pub divisor_term: BigRational,
    pub total: BigInt,
}

fn check_args(k: u32, q: u64) -> Result<(u64, u32)> {
    dim_sk(k)?;
    prime_power(q).ok_or(Error::NotPrimePower(q))
}

/// `sum_{dd' = q} min(d, d')^{k-1}`.
fn divisor_sum(k: u32, q: u64) -> BigInt {
    (1..=q)
        .filter(|d| q % d == 0)
        .map(|d| BigInt::from(d.min(q / d)).pow(k - 1))
        .sum()
}

/// `sum_t 12 H(4q - t^2) w_{k-1}(t, q)` over `t^2 < 4q`, or `t^2 <= 4q` when
/// `include_boundary` is set.
fn class_number_sum(k: u32, q: u64, include_boundary: bool) -> BigInt {
    let bound = trace_bound(q);
    let mut sum = BigInt::zero();
    for t in -bound..=bound {
        let disc = 4 * q as i64 - t * t;
        if disc == 0 && !include_boundary {
            continue;
        }
        let twelve_h = hurwitz(disc).expect("disc >= 0").twelve_h;
        if twelve_h == 0 {
            continue;
        }
        let w = lucas_w_all(k - 1, t, q).pop().expect("nonempty");
        sum += w * twelve_h;
    }
    sum
}

pub fn trace_tk_es(k: u32, q: u64) -> Result<EsBreakdown> {
    check_args(k, q)?;
    let twelve = BigInt::from(12);
    let root = q.sqrt();
    let square_term = if root * root == q {
        BigRational::new(
            BigInt::from(k - 1) * BigInt::from(q).pow((k - 2) / 2),
            twelve.clone(),
        )
    } else {
        BigRational::zero()
    };
    let elliptic_term = -BigRational::new(class_number_sum(k, q, false), twelve * 2);
    let divisor_term = -BigRational::new(divisor_sum(k, q), BigInt::from(2));
    let sum = &square_term + &elliptic_term + &divisor_term;
    assert!(sum.is_integer(), "trace formula produced a non-integer for k={k} q={q}");
    Ok(EsBreakdown {
        k,
        q,
        square_term,
        elliptic_term,
        divisor_term,
        total: sum.to_integer(),
    })
}

/// The same trace with the `t^2 = 4q` terms kept in the class-number sum and
/// `H(0) = -1/12` standing in for the square term.
pub fn trace_tk_es_absorbed(k: u32, q: u64) -> Result<BigRational> {
    check_args(k, q)?;
    let elliptic = -BigRational::new(class_number_sum(k, q, true), BigInt::from(24));
    Ok(elliptic - BigRational::new(divisor_sum(k, q), BigInt::from(2)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzChebSum {
    pub k: u32,
    pub q: u64,
    /// `sum_{t^2 < 4q} 12 H(4q - t^2) w_{k-1}(t, q)`.
    pub twelve_scaled: BigInt,
    /// `sum_{t^2 < 4q} H(4q - t^2) U_{k-2}(t / (2 sqrt q))`.
    pub value: f64,
    /// `|value| / (r k sqrt q)`.
    pub ratio: f64,
}

pub fn hurwitz_cheb_sum(k: u32, q: u64) -> Result<HurwitzChebSum> {
    let (_, r) = check_args(k, q)?;
    let twelve_scaled = class_number_sum(k, q, false);
    let scale = BigRational::new(
        BigInt::from(12) * BigInt::from(q).pow((k - 2) / 2),
        BigInt::one(),
    );
    let value = (BigRational::from_integer(twelve_scaled.clone()) / scale)
        .to_f64()
        .expect("finite");
    let ratio = value.abs() / (r as f64 * k as f64 * (q as f64).sqrt());
    Ok(HurwitzChebSum {
        k,
        q,
        twelve_scaled,
        value,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveChebSum {
    pub m: u32,
    pub q: u64,
    /// `sum_t counts[t] w_{m+1}(t, q)`, i.e. `q^{m/2} sum_{a,b} U_m(cos theta)`.
    pub exact: BigInt,
    /// `sum_{(a,b) nonsingular} U_m(cos theta_{a,b})`.
    pub value: f64,
    /// `|value| / (r m q^{3/2})`.
    pub ratio: f64,
}

/// Chebyshev moments `C_j = sum_t counts[t] w_{j+1}(t, q)` for `j = 0..=m_max`,
/// exact and scaled by `q^{j/2}`.
pub fn curve_cheb_moments(hist: &TraceHistogram, m_max: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m_max as usize + 1];
    for (t, count) in hist.iter() {
        if count == 0 {
            continue;
        }
        let w = lucas_w_all(m_max + 1, t, hist.q());
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += &w[j + 1] * count;
        }
    }
    out
}

pub fn curve_cheb_sum(hist: &TraceHistogram, m: u32) -> Result<CurveChebSum> {
    let q = hist.q();
    let (_, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if m == 0 {
        return Err(Error::DegreeTooSmall { got: 0, min: 1 });
    }
    let exact = curve_cheb_moments(hist, m).pop().expect("nonempty");
    let value = scaled_to_f64(&exact, q, m);
    let ratio = value.abs() / (r as f64 * m as f64 * (q as f64).powf(1.5));
    Ok(CurveChebSum { m, q, exact, value, ratio })
}

/// `exact / q^{m/2}` in floating point.
pub(crate) fn scaled_to_f64(exact: &BigInt, q: u64, m: u32) -> f64 {
    let qf = q as f64;
    let half = qf.sqrt().powi((m % 2) as i32);
    let ratio = BigRational::new(exact.clone(), BigInt::from(q).pow(m / 2));
    ratio.to_f64().expect("finite") / half
}
