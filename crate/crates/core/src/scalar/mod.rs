//! Exact arithmetic over `K = Q(s)` with `q = s^2`, and polynomials in the
//! spectral variable `z` over `K`.

mod field;
mod laurent;
mod rational;
mod spectral;

pub use field::{Field, Ring};
pub use laurent::{LaurentPolynomial, Rational};
pub use rational::{parse_rational, RationalScalar, MAX_PARSED_EXPONENT};
pub use spectral::SpectralPolynomial;

pub(crate) use laurent::int;

/// `[k]_d = sum_{m=0}^{k-1} s^(d(k-1-2m))`, the quantum integer with `q_i = s^d`.
pub fn quantum_integer(k: u32, d: i32) -> RationalScalar {
    let k = k as i32;
    let terms = (0..k).map(|m| (d * (k - 1 - 2 * m), int(1)));
    RationalScalar::from_laurent(LaurentPolynomial::from_terms(terms))
}

/// `[k]_d!`.
pub fn quantum_factorial(k: u32, d: i32) -> RationalScalar {
    (1..=k).fold(<RationalScalar as num::One>::one(), |acc, m| acc.times(&quantum_integer(m, d)))
}
