//! Coefficient rings for Schubert expressions.

use core::fmt::Debug;

use num_traits::{One, Zero};

use crate::poly::CoefPoly;
use crate::Rational;

/// An exact commutative coefficient ring containing the rationals.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add_in(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    /// `self += n · other`.
    fn add_multiple(&mut self, other: &Self, n: i64) {
        match n {
            0 => {}
            1 => self.add_in(other),
            -1 => self.add_in(&other.negated()),
            _ => self.add_in(&other.times(&Self::from_int(n))),
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn sub_in(&mut self, other: &Self) {
        self.add_in(&other.negated());
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn sub_in(&mut self, other: &Self) {
        *self -= other;
    }
}

impl Coeff for CoefPoly {
    fn zero() -> Self {
        CoefPoly::zero()
    }
    fn one() -> Self {
        CoefPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.as_poly().is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        CoefPoly::constant(r.clone())
    }
    fn add_in(&mut self, other: &Self) {
        self.as_poly_mut().add_in(other.as_poly());
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}
