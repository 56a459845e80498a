//! The commutative-semiring interface shared by all coefficient kinds.

use crate::rational::Rational;
use num_traits::{One, Zero};

/// A commutative semiring with unit. Implementors are the ordinary rationals,
/// the bipotent semifield, and the supertropical semifield, so that the same
/// sparse-polynomial machinery evaluates over all three.
pub trait Semiring: Clone + Eq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// `self` to the `k`-th power; `x^0` is the unit, including for zero.
    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Semiring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
}
