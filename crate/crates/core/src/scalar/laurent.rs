//! Laurent polynomials in `s` with big-rational coefficients.
//!
//! Stored densely: `coeffs[m]` is the coefficient of `s^(low + m)`. The zero
//! polynomial has no coefficients; otherwise the first and last stored
//! coefficients are nonzero.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i32,
    coeffs: Vec<Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// `s^exp` with coefficient one.
    pub fn s_pow(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_int_terms(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))))
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i32, Rational)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// Builds from a dense vector, trimming zeros on both ends.
    pub(crate) fn from_dense(low: i32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
        }
        Self { low: low + lead as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(m, c)| (self.low + m as i32, c))
    }

    pub(crate) fn dense(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn shift(&self, by: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().unwrap().max(other.high_exp().unwrap());
        let mut out = vec![Rational::zero(); (high - low + 1) as usize];
        for (m, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + m] = c.clone();
        }
        let base = (other.low - low) as usize;
        for (m, c) in other.coeffs.iter().enumerate() {
            if negate {
                out[base + m] -= c;
            } else {
                out[base + m] += c;
            }
        }
        Self::from_dense(low, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            return self.scale(&other.coeffs[0]).shift(other.low);
        }
        if self.is_monomial() {
            return other.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[a + b] += x * y;
                }
            }
        }
        Self::from_dense(self.low + other.low, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Value at `s = x`; `None` if `x = 0` and a negative power is present.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if x.is_zero() {
            return if self.low < 0 { None } else { Some(self.coeff(0)) };
        }
        // Horner on the dense part, then multiply by x^low.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Some(acc * rational_pow(x, self.low))
    }
}

pub(crate) fn rational_pow(x: &Rational, e: i32) -> Rational {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) if e == 1 => write!(f, "s")?,
                (_, true) => write!(f, "s^{e}")?,
                (1, false) => write!(f, "{abs}*s")?,
                (_, false) => write!(f, "{abs}*s^{e}")?,
            }
        }
        Ok(())
    }
}

// --- dense polynomial helpers over Q (index = power of s) ---------------------

/// Remainder of `a` by `b`, in place on `a`; returns the quotient.
pub(crate) fn poly_divrem(a: &mut Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    trim(a);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if a.len() < b.len() {
        return Vec::new();
    }
    let mut quot = vec![Rational::zero(); a.len() - db];
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let c = &a[da] * &lead_inv;
        let shift = da - db;
        for (m, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                a[shift + m] -= &c * bc;
            }
        }
        quot[shift] = c;
        a.pop();
        trim(a);
    }
    quot
}

fn trim(a: &mut Vec<Rational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Monic gcd of two nonzero dense polynomials.
pub(crate) fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![Rational::one()];
        }
        poly_divrem(&mut x, &y);
        std::mem::swap(&mut x, &mut y);
        // keep the divisor monic to slow coefficient growth
        if let Some(l) = y.last().cloned() {
            let inv = l.recip();
            for c in y.iter_mut() {
                *c *= &inv;
            }
        }
    }
    let inv = x.last().unwrap().recip();
    x.iter().map(|c| c * &inv).collect()
}

pub(crate) fn int(c: i64) -> Rational {
    Rational::from_integer(BigInt::from(c))
}
