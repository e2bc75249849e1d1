//! Laurent polynomials in the spectral variable `z` over `K = Q(s)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::field::Ring;
use super::rational::RationalScalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SpectralPolynomial {
    terms: BTreeMap<i32, RationalScalar>,
}

impl SpectralPolynomial {
    pub fn constant(c: RationalScalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: RationalScalar, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `z^e`.
    pub fn z_pow(exp: i32) -> Self {
        Self::monomial(RationalScalar::one(), exp)
    }

    /// `a + b z`.
    pub fn linear(a: RationalScalar, b: RationalScalar) -> Self {
        Self::from_terms([(0, a), (1, b)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, RationalScalar)>>(terms: I) -> Self {
        let mut out: BTreeMap<i32, RationalScalar> = BTreeMap::new();
        for (e, c) in terms {
            let slot = out.entry(e).or_insert_with(RationalScalar::zero);
            *slot = slot.plus(&c);
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalScalar)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> RationalScalar {
        self.terms.get(&exp).cloned().unwrap_or_else(RationalScalar::zero)
    }

    pub fn low_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn high_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &RationalScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x.times(c))).collect() }
    }

    /// Substitutes `z = r`.
    pub fn eval(&self, r: &RationalScalar) -> Result<RationalScalar> {
        if r.is_zero() && self.low_exp().is_some_and(|e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = RationalScalar::zero();
        for (e, c) in &self.terms {
            acc = acc.plus(&c.times(&r.pow(*e)));
        }
        Ok(acc)
    }
}

impl Zero for SpectralPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SpectralPolynomial {
    fn one() -> Self {
        Self::constant(RationalScalar::one())
    }
}

impl std::ops::Add for SpectralPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl std::ops::Mul for SpectralPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Ring for SpectralPolynomial {
    fn plus(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(slot) => {
                    let v = slot.plus(c);
                    if v.is_zero() {
                        terms.remove(e);
                    } else {
                        *slot = v;
                    }
                }
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        Self { terms }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out: BTreeMap<i32, RationalScalar> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let slot = out.entry(a + b).or_insert_with(RationalScalar::zero);
                *slot = slot.plus(&x.times(y));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    fn negate(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.negate())).collect() }
    }
}

impl fmt::Display for SpectralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SpectralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for SpectralPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> RationalScalar {
        RationalScalar::q_pow(e)
    }

    #[test]
    fn expand_then_evaluate() {
        let one = RationalScalar::one();
        let xi = -RationalScalar::q_pow(5);
        let a = SpectralPolynomial::linear(one.clone(), -q(2));
        let b = SpectralPolynomial::linear(one.clone(), -xi.clone());
        let p = a.times(&b);
        let at = p.eval(&q(2)).unwrap();
        let expect = (&one - &q(4)) * (&one - &(&xi * &q(2)));
        assert_eq!(at, expect);
        assert!(p.minus(&p).is_zero());
    }

    #[test]
    fn eigenvalue_root() {
        // (z - q^2)(z - xi) vanishes at z = q^2
        let xi = -q(6);
        let p = SpectralPolynomial::linear(-q(2), RationalScalar::one())
            .times(&SpectralPolynomial::linear(-xi, RationalScalar::one()));
        assert!(p.eval(&q(2)).unwrap().is_zero());
    }
}
