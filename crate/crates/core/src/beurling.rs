//! Beurling-Selberg majorants and minorants of interval indicators on `R/Z`.
//!
//! The polynomials are built from Vaaler's trigonometric approximation of the
//! sawtooth `psi(x) = x - floor(x) - 1/2` and its Fejer-kernel error bound:
//! with `K = M + 1`,
//!
//! ```text
//! chi_J(x) = (beta - alpha) + psi(alpha - x) - psi(beta - x)
//! |psi(x) - psi*(x)| <= Fejer_K(x) / (2K)
//! S±(x) = (beta - alpha) + psi*(alpha - x) - psi*(beta - x)
//!         ± (Fejer_K(alpha - x) + Fejer_K(beta - x)) / (2K)
//! ```
//!
//! so that `S- <= chi_J <= S+` everywhere, whichever value the indicator takes
//! at the endpoints. `e(x)` is `exp(2 pi i x)` throughout.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `J = [alpha, beta]` with `0 <= alpha < beta <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalJ {
    alpha: f64,
    beta: f64,
}

impl IntervalJ {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && 0.0 <= alpha && alpha < beta && beta <= 1.0) {
            return Err(Error::InvalidInterval { alpha, beta });
        }
        Ok(IntervalJ { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn length(&self) -> f64 {
        self.beta - self.alpha
    }

    /// Closed-interval indicator of the 1-periodic extension.
    pub fn indicator(&self, x: f64) -> f64 {
        if self.length() >= 1.0 {
            return 1.0;
        }
        let y = x - x.floor();
        if (self.alpha <= y && y <= self.beta) || (self.beta == 1.0 && y == 0.0) {
            1.0
        } else {
            0.0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Majorant,
    Minorant,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Majorant => 1.0,
            Sign::Minorant => -1.0,
        }
    }
}

/// `e(x) = exp(2 pi i x)`.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// Fourier coefficient `int_J e(-m x) dx`.
pub fn chi_hat(j: &IntervalJ, m: i64) -> Complex64 {
    if m == 0 {
        return Complex64::new(j.length(), 0.0);
    }
    let m_f = m as f64;
    (e(-m_f * j.alpha) - e(-m_f * j.beta)) / Complex64::new(0.0, 2.0 * PI * m_f)
}

/// Vaaler's weight `pi u (1 - |u|) cot(pi u) + |u|` on `[-1, 1]`.
pub fn vaaler_weight(u: f64) -> f64 {
    if u == 0.0 {
        return 1.0;
    }
    let a = u.abs();
    PI * a * (1.0 - a) / (PI * a).tan() + a
}

/// Fourier coefficients `S±(m)`, `|m| <= M`, of a Beurling-Selberg polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SelbergPolynomial {
    interval: IntervalJ,
    degree: usize,
    sign: Sign,
    /// Index `m + degree`.
    coeffs: Vec<Complex64>,
}

pub fn selberg(j: IntervalJ, degree: usize, sign: Sign) -> Result<SelbergPolynomial> {
    if degree < 1 {
        return Err(Error::DegreeTooSmall { got: degree, min: 1 });
    }
    let k = (degree + 1) as f64;
    let s = sign.as_f64();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * degree + 1];
    coeffs[degree] = Complex64::new(j.length() + s / k, 0.0);
    for m in 1..=degree {
        let m_f = m as f64;
        let fejer = 1.0 - m_f / k;
        let endpoints = e(-m_f * j.alpha) + e(-m_f * j.beta);
        let c = chi_hat(&j, m as i64) * vaaler_weight(m_f / k) + endpoints * (s * fejer / (2.0 * k));
        coeffs[degree + m] = c;
        coeffs[degree - m] = c.conj();
    }
    Ok(SelbergPolynomial {
        interval: j,
        degree,
        sign,
        coeffs,
    })
}

impl SelbergPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn interval(&self) -> &IntervalJ {
        &self.interval
    }

    /// `S(m)`, zero outside `|m| <= M`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.degree {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(m + self.degree as i64) as usize]
        }
    }

    /// `(m, S(m))` for `m = -M..=M`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let d = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - d, c))
    }

    /// `sum_m S(m) e(m x)` without discarding the imaginary part.
    pub fn eval_complex(&self, x: f64) -> Complex64 {
        self.iter().map(|(m, c)| c * e(m as f64 * x)).sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_complex(x).re
    }

    /// `S(m) + S(-m)` for `0 < m <= M`.
    pub fn paired_coeff(&self, m: i64) -> Result<f64> {
        if m < 1 || m as usize > self.degree {
            return Err(Error::FrequencyOutOfRange {
                m,
                max: self.degree,
            });
        }
        Ok((self.coeff(m) + self.coeff(-m)).re)
    }
}
