//! Hurwitz-Kronecker class numbers from reduced binary quadratic forms.

use crate::error::{Error, Result};

/// A positive-definite form `Ax^2 + Bxy + Cy^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    /// `N` such that the discriminant is `-N`.
    pub fn norm_discriminant(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    /// `|B| <= A <= C`, with `B >= 0` when `|B| = A` or `A = C`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Weight in twelfths: forms proportional to `x^2 + y^2` count 1/2, forms
    /// proportional to `x^2 + xy + y^2` count 1/3, everything else counts 1.
    pub fn twelfths_weight(&self) -> i64 {
        if self.a == self.c && self.b == 0 {
            6
        } else if self.a == self.c && self.b == self.a {
            4
        } else {
            12
        }
    }
}

/// `H(N)` stored exactly as `12 H(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HurwitzValue {
    pub n: u64,
    pub twelve_h: i64,
    /// Number of reduced forms that contributed (0 for `N = 0`).
    pub form_count: usize,
}

/// All reduced forms of discriminant `-n`, sorted by `(A, B)`.
pub fn reduced_forms(n: u64) -> Vec<QuadForm> {
    let mut forms = Vec::new();
    if n == 0 || n % 4 == 1 || n % 4 == 2 {
        return forms;
    }
    let n = n as i64;
    let mut a = 1i64;
    // 3A^2 <= 4AC - B^2 = N for reduced forms
    while 3 * a * a <= n {
        for b in -a..=a {
            if (b - n).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let form = QuadForm { a, b, c: num / (4 * a) };
            if form.is_reduced() {
                forms.push(form);
            }
        }
        a += 1;
    }
    forms
}

/// Hurwitz class number with `H(0) = -1/12`.
pub fn hurwitz(n: i64) -> Result<HurwitzValue> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    let n = n as u64;
    if n == 0 {
        return Ok(HurwitzValue {
            n,
            twelve_h: -1,
            form_count: 0,
        });
    }
    let forms = reduced_forms(n);
    Ok(HurwitzValue {
        n,
        twelve_h: forms.iter().map(QuadForm::twelfths_weight).sum(),
        form_count: forms.len(),
    })
}

/// `12 H(n)` for every `n` in `0..=n_max`.
pub fn hurwitz_table(n_max: u64) -> Vec<i64> {
    (0..=n_max as i64)
        .map(|n| hurwitz(n).expect("nonnegative").twelve_h)
        .collect()
}
