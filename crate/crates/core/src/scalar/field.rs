//! Minimal ring/field traits so the linear algebra runs both symbolically over
//! `Q(s)` and numerically over `Q` at a fixed evaluation point.

use std::fmt::Debug;

use num::{One, Zero};

use super::laurent::Rational;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero, like integer division.
    fn recip(&self) -> Self;

    fn over(&self, rhs: &Self) -> Self {
        self.times(&rhs.recip())
    }
}

impl Ring for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for Rational {
    fn recip(&self) -> Self {
        num::rational::Ratio::recip(self)
    }
}
