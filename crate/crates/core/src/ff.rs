//! Arithmetic in `F_q = F_p[x]/(f)` for primes `p >= 5`.
//!
//! Elements are stored as their index in the canonical enumeration: the
//! polynomial `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` has index
//! `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`. For `r = 1` this is the residue itself.

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

// 5^8 < 2^20 < 5^9
const MAX_DEGREE: usize = 8;

/// An element of `F_q`, identified by its index in the canonical enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable description of `F_{p^r}` plus the tables used by point counting.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, coefficients low to high (length `r + 1`).
    modulus: Vec<u32>,
    /// `chi[i]` is the quadratic character of element `i`.
    chi: Vec<i8>,
    generator: FieldElement,
}

impl FieldContext {
    /// Builds `F_{p^r}` using the lexicographically smallest monic irreducible
    /// modulus of degree `r` (ordered by the index of its non-leading part).
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        Self::build(p, r)
    }

    /// Builds the field of size `q`, which must be a power of a prime `p >= 5`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, r)
    }

    fn build(p: u64, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, r })?;
        let p = p as u32;
        let modulus = smallest_irreducible(p, r as usize);
        let mut ctx = FieldContext {
            p,
            r,
            q: q as u32,
            modulus,
            chi: Vec::new(),
            generator: FieldElement(1),
        };
        ctx.chi = ctx.character_table();
        ctx.generator = ctx.find_generator();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Coefficients of the defining polynomial, low to high, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the cyclic group `F_q^*`.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidElement(format!(
                "index {index} outside F_{}",
                self.q
            )))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.r as usize {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.r,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.p
            )));
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    /// Polynomial-basis coefficients, low to high, always of length `r`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        self.digits(x)[..self.r as usize].to_vec()
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.r == 1 {
            let s = x.0 + y.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        let (dx, dy) = (self.digits(x), self.digits(y));
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.r as usize {
            let s = dx[i] + dy[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        self.undigits(&out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.r == 1 {
            return FieldElement(if x.0 == 0 { 0 } else { self.p - x.0 });
        }
        let mut d = self.digits(x);
        for c in d.iter_mut().take(self.r as usize) {
            if *c != 0 {
                *c = self.p - *c;
            }
        }
        self.undigits(&d)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.p as u64;
        if self.r == 1 {
            return FieldElement((x.0 as u64 * y.0 as u64 % p) as u32);
        }
        let r = self.r as usize;
        let (dx, dy) = (self.digits(x), self.digits(y));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..r {
            if dx[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + dx[i] as u64 * dy[j] as u64) % p;
            }
        }
        // x^r = -(m_0 + ... + m_{r-1} x^{r-1})
        for i in (r..2 * r - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..r {
                let m = self.modulus[j] as u64;
                prod[i - r + j] = (prod[i - r + j] + c * ((p - m) % p)) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..r {
            out[i] = prod[i] as u32;
        }
        self.undigits(&out)
    }

    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// Square-and-multiply exponentiation; `x^0 = 1` for every `x`.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    /// Quadratic character from the precomputed table.
    pub fn quad_char(&self, z: FieldElement) -> i8 {
        self.chi[z.0 as usize]
    }

    /// Quadratic character by Euler's criterion `z^((q-1)/2)`.
    pub fn quad_char_euler(&self, z: FieldElement) -> i8 {
        if z.is_zero() {
            return 0;
        }
        if self.pow(z, (self.q as u64 - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    /// The whole character table indexed by element index.
    pub fn character_slice(&self) -> &[i8] {
        &self.chi
    }

    fn character_table(&self) -> Vec<i8> {
        let mut chi = vec![-1i8; self.q as usize];
        chi[0] = 0;
        for x in self.units() {
            chi[self.square(x).0 as usize] = 1;
        }
        chi
    }

    fn find_generator(&self) -> FieldElement {
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        self.units()
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| self.pow(g, order / l) != self.one())
            })
            .expect("F_q^* is cyclic")
    }

    fn digits(&self, x: FieldElement) -> [u32; MAX_DEGREE] {
        let mut d = [0u32; MAX_DEGREE];
        let mut v = x.0;
        for c in d.iter_mut().take(self.r as usize) {
            *c = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32; MAX_DEGREE]) -> FieldElement {
        FieldElement(
            d[..self.r as usize]
                .iter()
                .rev()
                .fold(0, |acc, &c| acc * self.p + c),
        )
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^r` with `p >= 5` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 5 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    if p < 5 {
        return None;
    }
    let mut rest = q;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while rem.len() > dm {
        let lead = rem.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let base = rem.len() - dm;
        for j in 0..dm {
            rem[base + j] = (rem[base + j] + lead * (p - m[j] as u64)) % p;
        }
    }
    rem.into_iter().map(|c| c as u32).collect()
}

fn monic_from_index(index: u64, degree: usize, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut v = index;
    for _ in 0..degree {
        coeffs.push((v % p as u64) as u32);
        v /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = f.len() - 1;
    for d in 1..=degree / 2 {
        for index in 0..(p as u64).pow(d as u32) {
            let g = monic_from_index(index, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, r: usize) -> Vec<u32> {
    (0..(p as u64).pow(r as u32))
        .map(|index| monic_from_index(index, r, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
impl FieldContext {
    /// Skips the `p >= 5` restriction so small worked examples over F_9 can run.
    pub(crate) fn for_tests(p: u64, r: u32) -> Self {
        Self::build(p, r).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f5 = FieldContext::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        assert_eq!(f5.modulus(), &[0, 1]);

        let f7 = FieldContext::new(7, 1).unwrap();
        let (three, five) = (f7.from_int(3), f7.from_int(5));
        assert_eq!(f7.mul(three, five), f7.one());
        assert_eq!(f7.inv(three).unwrap(), five);
        assert_eq!(f7.inv(f7.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            FieldContext::new(3, 2).unwrap_err(),
            Error::UnsupportedCharacteristic(3)
        );
        assert_eq!(FieldContext::new(2, 1).unwrap_err(), Error::UnsupportedCharacteristic(2));
        assert_eq!(FieldContext::new(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldContext::new(5, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            FieldContext::new(5, 9),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldContext::new(5, 8).is_ok());
    }

    #[test]
    fn f25_modulus_matches_exhaustive_search() {
        let ctx = FieldContext::new(5, 2).unwrap();
        assert_eq!(ctx.q(), 25);
        // oracle: x^2 + c1 x + c0 is irreducible iff it has no root in F_5
        let has_root = |c0: u32, c1: u32| (0..5).any(|x| (x * x + c1 * x + c0) % 5 == 0);
        let expected = (0..25)
            .map(|i| (i % 5, i / 5))
            .find(|&(c0, c1)| !has_root(c0, c1))
            .unwrap();
        assert_eq!(ctx.modulus(), &[expected.0, expected.1, 1]);
        assert_eq!(ctx.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn f9_worked_examples() {
        let f9 = FieldContext::for_tests(3, 2);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let x_plus_1 = f9.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f9.coeffs(f9.square(x_plus_1)), vec![0, 2]);
        let minus_one = f9.from_int(-1);
        assert_eq!(f9.quad_char(minus_one), 1);
        assert_eq!(f9.quad_char_euler(minus_one), 1);
    }

    #[test]
    fn quadratic_character_small() {
        let f5 = FieldContext::new(5, 1).unwrap();
        assert_eq!(f5.quad_char(f5.from_int(4)), 1);
        assert_eq!(f5.quad_char(f5.from_int(2)), -1);
        assert_eq!(f5.quad_char(f5.zero()), 0);
    }

    #[test]
    fn character_table_matches_euler() {
        for (p, r) in [(5, 1), (7, 1), (5, 2), (7, 2), (5, 3), (11, 2), (101, 1)] {
            let ctx = FieldContext::new(p, r).unwrap();
            for z in ctx.elements() {
                assert_eq!(ctx.quad_char(z), ctx.quad_char_euler(z), "F_{}", ctx.q());
            }
            let plus = ctx.character_slice().iter().filter(|&&c| c == 1).count() as u64;
            let minus = ctx.character_slice().iter().filter(|&&c| c == -1).count() as u64;
            assert_eq!(plus, (ctx.q() - 1) / 2);
            assert_eq!(minus, (ctx.q() - 1) / 2);
        }
    }

    #[test]
    fn character_is_multiplicative() {
        for q in [25u64, 49, 125] {
            let ctx = FieldContext::with_order(q).unwrap();
            for x in ctx.units() {
                for y in ctx.units() {
                    assert_eq!(
                        ctx.quad_char(ctx.mul(x, y)),
                        ctx.quad_char(x) * ctx.quad_char(y)
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_everything() {
        for q in [5u64, 25, 49, 125, 343, 625] {
            let ctx = FieldContext::with_order(q).unwrap();
            for z in ctx.elements() {
                assert_eq!(ctx.pow(z, q), z);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for q in [5u64, 7, 25, 49, 121, 625] {
            let ctx = FieldContext::with_order(q).unwrap();
            let g = ctx.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = ctx.one();
            for _ in 0..q - 1 {
                seen.insert(x);
                x = ctx.mul(x, g);
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn coefficient_round_trip_and_validation() {
        let ctx = FieldContext::new(7, 3).unwrap();
        let x = ctx.from_coeffs(&[3, 0, 6]).unwrap();
        assert_eq!(ctx.coeffs(x), vec![3, 0, 6]);
        assert!(ctx.from_coeffs(&[7, 0, 0]).is_err());
        assert!(ctx.from_coeffs(&[1, 0]).is_err());
        assert!(ctx.element(343).is_err());
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(101), Some((101, 1)));
        assert_eq!(prime_power(9), None);
        assert_eq!(prime_power(35), None);
        assert_eq!(prime_power(1), None);
    }
}
