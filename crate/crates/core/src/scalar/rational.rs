//! Elements of the ground field `K = Q(s)`, with `q = s^2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::laurent::{int, poly_divrem, poly_gcd, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// A canonical quotient `num / den` of Laurent polynomials in `s`.
///
/// Canonical form: `den` is an ordinary polynomial with constant term 1, and
/// `num`, `den` have no common nonunit factor. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalScalar {
    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(int(c)))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(c))
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        Self { num: p, den: LaurentPolynomial::one() }
    }

    /// `s^e`.
    pub fn s_pow(e: i32) -> Self {
        Self::from_laurent(LaurentPolynomial::s_pow(e))
    }

    /// `q^e = s^(2e)`.
    pub fn q_pow(e: i32) -> Self {
        Self::s_pow(2 * e)
    }

    /// `(-q)^e = (-1)^e s^(2e)`.
    pub fn neg_q_pow(e: i32) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_laurent(LaurentPolynomial::monomial(int(sign), 2 * e))
    }

    /// Reduces `num / den` to canonical form.
    pub fn canonicalize(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = -den.low_exp().unwrap();
        let num = num.shift(shift);
        let den = den.shift(shift);
        if den.is_monomial() {
            let c = den.coeff(0).recip();
            return Ok(Self { num: num.scale(&c), den: LaurentPolynomial::one() });
        }
        // den has a nonzero constant term; strip the power of s from num.
        let num_low = num.low_exp().unwrap();
        let mut p = num.dense().to_vec();
        let mut d = den.dense().to_vec();
        if p.len() > 1 {
            let g = poly_gcd(&p, &d);
            if g.len() > 1 {
                p = exact_div(p, &g);
                d = exact_div(d, &g);
            }
        }
        let c = d[0].recip();
        let num = LaurentPolynomial::from_dense(num_low, p).scale(&c);
        let den = LaurentPolynomial::from_dense(0, d).scale(&c);
        Ok(Self { num, den })
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the value is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        (self.is_laurent() && self.num.is_monomial() && self.num.low_exp() == Some(0)).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::canonicalize(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_laurent() && rhs.num.is_monomial() {
            let e = rhs.num.low_exp().unwrap();
            let c = rhs.num.coeff(e).recip();
            return Ok(Self { num: self.num.scale(&c).shift(-e), den: self.den.clone() });
        }
        Self::canonicalize(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        Self { num: base.num.pow(e.unsigned_abs()), den: base.den.pow(e.unsigned_abs()) }
    }

    /// `s`-adic valuation; `None` for zero.
    pub fn order(&self) -> Option<i32> {
        self.num.low_exp()
    }

    /// Limit at `s -> 0`.
    pub fn value_at_zero(&self) -> Result<Rational> {
        match self.order() {
            None => Ok(Rational::zero()),
            Some(o) if o < 0 => Err(Error::NotRegularAtZero),
            Some(0) => Ok(self.num.coeff(0)),
            Some(_) => Ok(Rational::zero()),
        }
    }

    pub fn order_and_value_at_zero(&self) -> Result<(i32, Rational)> {
        let order = self.order().ok_or(Error::DivisionByZero)?;
        Ok((order, self.value_at_zero()?))
    }

    /// Substitutes `s = x`; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x)? / d)
    }

    /// Substitutes `s -> s^m` (for instance `m = 2` turns a function of `q`
    /// written in `s` into one of `q`).
    pub fn substitute_power(&self, m: i32) -> Self {
        let sub = |p: &LaurentPolynomial| LaurentPolynomial::from_terms(p.terms().map(|(e, c)| (e * m, c.clone())));
        Self::canonicalize(sub(&self.num), sub(&self.den)).expect("nonzero denominator stays nonzero")
    }
}

fn exact_div(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let q = poly_divrem(&mut a, b);
    debug_assert!(a.is_empty(), "inexact polynomial division");
    q
}

impl Zero for RationalScalar {
    fn zero() -> Self {
        Self { num: LaurentPolynomial::zero(), den: LaurentPolynomial::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalScalar {
    fn one() -> Self {
        Self::from_laurent(LaurentPolynomial::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Ring for RationalScalar {
    fn plus(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.is_laurent() {
                return Self::from_laurent(self.num.add(&rhs.num));
            }
            return Self::canonicalize(self.num.add(&rhs.num), self.den.clone()).unwrap();
        }
        Self::canonicalize(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den)).unwrap()
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return Self::from_laurent(self.num.mul(&rhs.num));
        }
        if rhs.is_laurent() && rhs.num.is_monomial() {
            return Self { num: self.num.mul(&rhs.num), den: self.den.clone() };
        }
        if self.is_laurent() && self.num.is_monomial() {
            return Self { num: rhs.num.mul(&self.num), den: rhs.den.clone() };
        }
        Self::canonicalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }

    fn negate(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Field for RationalScalar {
    fn recip(&self) -> Self {
        self.inv().expect("inverse of zero")
    }

    fn over(&self, rhs: &Self) -> Self {
        self.try_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $via:ident) => {
        impl $trait<&RationalScalar> for &RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: &RationalScalar) -> RationalScalar {
                self.$via(rhs)
            }
        }
        impl $trait for RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: RationalScalar) -> RationalScalar {
                (&self).$via(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);
forward_binop!(Div, div, over);

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        self.negate()
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        self.negate()
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// --- JSON form: {"num": [[exp, "p/q"], ...], "den": [[exp, "p/q"], ...]} ----

/// Largest exponent magnitude accepted from external input.
pub const MAX_PARSED_EXPONENT: i32 = 4096;

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    num: Vec<(i32, String)>,
    den: Vec<(i32, String)>,
}

fn laurent_terms(p: &LaurentPolynomial) -> Vec<(i32, String)> {
    p.terms().map(|(e, c)| (e, c.to_string())).collect()
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if text.is_empty() || text.len() > 256 {
        return Err(Error::Parse(format!("bad rational literal {text:?}")));
    }
    Rational::from_str(text).map_err(|e| Error::Parse(format!("bad rational literal {text:?}: {e}")))
}

fn parse_laurent(terms: &[(i32, String)]) -> Result<LaurentPolynomial> {
    let mut out = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if e.unsigned_abs() > 2 * MAX_PARSED_EXPONENT as u32 {
            return Err(Error::Parse(format!("exponent {e} out of range")));
        }
        out.push((*e, parse_rational(c)?));
    }
    Ok(LaurentPolynomial::from_terms(out))
}

/// Canonical form of parsed terms, rejected unless every exponent is within
/// `MAX_PARSED_EXPONENT` so that accepted values always print back to
/// accepted text.
fn parse_scalar(num: &[(i32, String)], den: &[(i32, String)]) -> Result<RationalScalar> {
    let x = RationalScalar::canonicalize(parse_laurent(num)?, parse_laurent(den)?)?;
    let wide = [&x.num, &x.den].iter().flat_map(|p| p.terms()).any(|(e, _)| e.unsigned_abs() > MAX_PARSED_EXPONENT as u32);
    if wide {
        return Err(Error::Parse("exponent out of range".into()));
    }
    Ok(x)
}

impl RationalScalar {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ScalarRepr { num: laurent_terms(&self.num), den: laurent_terms(&self.den) })
            .expect("scalar serializes")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let repr: ScalarRepr =
            ScalarRepr::deserialize(value).map_err(|e| Error::Parse(format!("scalar: {e}")))?;
        parse_scalar(&repr.num, &repr.den)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&value)
    }
}

impl Serialize for RationalScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { num: laurent_terms(&self.num), den: laurent_terms(&self.den) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        parse_scalar(&repr.num, &repr.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(terms)
    }

    #[test]
    fn canonical_examples() {
        // (1 - s^8) / (1 - s^4) = 1 + s^4
        let r = RationalScalar::canonicalize(lp(&[(0, 1), (8, -1)]), lp(&[(0, 1), (4, -1)])).unwrap();
        assert_eq!(r, RationalScalar::from_laurent(lp(&[(0, 1), (4, 1)])));
        let r = RationalScalar::canonicalize(lp(&[(2, 1)]), lp(&[(2, 1)])).unwrap();
        assert!(r.is_one());
        // (s^-1 - s) / (1 - s^2) = s^-1
        let r = RationalScalar::canonicalize(lp(&[(-1, 1), (1, -1)]), lp(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(r, RationalScalar::s_pow(-1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalScalar::canonicalize(lp(&[(0, 1)]), LaurentPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(RationalScalar::one().try_div(&RationalScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_denominator_normalized() {
        // s^3 / (2 s^2 + 4 s^3) = s / (2 + 4 s) = (s/2) / (1 + 2 s)
        let r = RationalScalar::canonicalize(lp(&[(3, 1)]), lp(&[(2, 2), (3, 4)])).unwrap();
        assert_eq!(r.denominator(), &lp(&[(0, 1), (1, 2)]));
        assert_eq!(r.numerator(), &LaurentPolynomial::monomial(Rational::new(1.into(), 2.into()), 1));
        let again = RationalScalar::canonicalize(r.numerator().clone(), r.denominator().clone()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn order_and_value() {
        let q = RationalScalar::q_pow(1);
        let x = q.over(&(RationalScalar::one() + q.clone()));
        assert_eq!(x.order_and_value_at_zero().unwrap(), (2, Rational::zero()));
        let y = RationalScalar::one() + RationalScalar::q_pow(2);
        assert_eq!(y.order_and_value_at_zero().unwrap(), (0, Rational::one()));
        assert_eq!(RationalScalar::q_pow(-1).value_at_zero(), Err(Error::NotRegularAtZero));
    }

    #[test]
    fn json_round_trip() {
        let x = RationalScalar::canonicalize(lp(&[(-1, 3), (2, 1)]), lp(&[(0, 1), (1, -5)])).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(RationalScalar::from_json_str(&text).unwrap(), x);
        let parsed: RationalScalar = serde_json::from_str(r#"{"num":[[0,"1"],[4,"-1"]],"den":[[0,"1"],[2,"-1"]]}"#).unwrap();
        assert_eq!(parsed, RationalScalar::one() + RationalScalar::q_pow(1));
        assert!(RationalScalar::from_json_str(r#"{"num":[[0,"1"]],"den":[]}"#).is_err());
        assert!(RationalScalar::from_json_str(r#"{"num":[[99999999,"1"]],"den":[[0,"1"]]}"#).is_err());
    }

    #[test]
    fn neg_q_powers() {
        assert_eq!(RationalScalar::neg_q_pow(3), -RationalScalar::q_pow(3));
        assert_eq!(RationalScalar::neg_q_pow(-2), RationalScalar::q_pow(-2));
    }
}
