//! Chebyshev polynomials of the second kind and the integer sequence
//! `w_j(t, q) = (rho^j - rhobar^j) / (rho - rhobar)` for the roots of
//! `y^2 - t y + q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `U_n(x)` by the three-term recurrence.
pub fn u_poly(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_0(x), ..., U_n(x)`.
pub fn u_poly_all(n: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(2.0 * x);
    }
    for i in 2..=n as usize {
        let next = 2.0 * x * out[i - 1] - out[i - 2];
        out.push(next);
    }
    out
}

/// `U_n(cos theta) - U_{n-2}(cos theta)`, which equals `2 cos(n theta)`.
pub fn cos_combination(n: u32, theta: f64) -> f64 {
    assert!(n >= 2, "cos_combination needs n >= 2");
    let u = u_poly_all(n, theta.cos());
    u[n as usize] - u[n as usize - 2]
}

/// Exact `w_j(t, q)`: `w_0 = 0`, `w_1 = 1`, `w_{j+1} = t w_j - q w_{j-1}`.
///
/// `w_{k-1}(t, q) = q^{(k-2)/2} U_{k-2}(t / (2 sqrt q))`.
pub fn lucas_w(j: u32, t: i64, q: u64) -> BigInt {
    lucas_w_all(j, t, q).pop().expect("nonempty")
}

/// `w_0, ..., w_j`.
pub fn lucas_w_all(j: u32, t: i64, q: u64) -> Vec<BigInt> {
    let t = BigInt::from(t);
    let q = BigInt::from(q);
    let mut out = Vec::with_capacity(j as usize + 1);
    out.push(BigInt::zero());
    if j >= 1 {
        out.push(BigInt::one());
    }
    for i in 2..=j as usize {
        let next = &t * &out[i - 1] - &q * &out[i - 2];
        out.push(next);
    }
    out
}
