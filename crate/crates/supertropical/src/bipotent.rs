//! The bipotent semifield `M = Γ ∪ {0}` over the ordered abelian group
//! `Γ = (ℚ, +)`, in additive (max-plus) notation.
//!
//! Addition is the order maximum, so `a + b` is always one of its arguments
//! (bipotency) and `a ≤ b ⟺ a + b = b` recovers the total order.
//! Multiplication is the group operation, here rational addition, with an
//! absorbing zero below every group value. The zero element prints as
//! `-inf` to keep it apart from the rational `0`, which is the
//! multiplicative unit of `M`.
//!
//! The multiplicative↔additive dictionary: a multiplicatively written ordered
//! abelian group `(Γ, ·, <)` maps onto this realization by sending the group
//! product to `+` and the group unit to `0`; the semifield structure
//! (max, absorbing bottom) is identical on both sides.

use crate::rational::{render_rational, Rational};
use crate::semiring::Semiring;
use std::fmt;
use std::ops::{Add, Mul};
use thiserror::Error;

/// Value of the max-plus semifield: the bottom element or a group value.
///
/// The derived total order places `Zero` strictly below every `Value` and
/// orders values by their rationals, which is exactly the semiring order
/// `a ≤ b ⟺ a + b = b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BipotentElem {
    Zero,
    Value(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("the bipotent zero has no multiplicative inverse")]
pub struct ZeroInverse;

impl BipotentElem {
    pub fn value(g: Rational) -> Self {
        BipotentElem::Value(g)
    }

    pub fn from_int(n: i64) -> Self {
        BipotentElem::Value(crate::rational::int(n))
    }

    /// The multiplicative unit, the group value `0`.
    pub fn one() -> Self {
        BipotentElem::Value(Rational::from_integer(0.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BipotentElem::Zero)
    }

    pub fn group_value(&self) -> Option<&Rational> {
        match self {
            BipotentElem::Zero => None,
            BipotentElem::Value(g) => Some(g),
        }
    }

    /// Semiring order; agrees with `self + other == other`.
    pub fn leq(&self, other: &Self) -> bool {
        self <= other
    }

    /// Group inverse of a nonzero element; the zero is not invertible.
    pub fn inverse(&self) -> Result<Self, ZeroInverse> {
        match self {
            BipotentElem::Zero => Err(ZeroInverse),
            BipotentElem::Value(g) => Ok(BipotentElem::Value(-g)),
        }
    }
}

impl Add for BipotentElem {
    type Output = BipotentElem;

    fn add(self, rhs: BipotentElem) -> BipotentElem {
        self.max(rhs)
    }
}

impl Add for &BipotentElem {
    type Output = BipotentElem;

    fn add(self, rhs: &BipotentElem) -> BipotentElem {
        self.max(rhs).clone()
    }
}

impl Mul for BipotentElem {
    type Output = BipotentElem;

    fn mul(self, rhs: BipotentElem) -> BipotentElem {
        match (self, rhs) {
            (BipotentElem::Value(a), BipotentElem::Value(b)) => BipotentElem::Value(a + b),
            _ => BipotentElem::Zero,
        }
    }
}

impl Mul for &BipotentElem {
    type Output = BipotentElem;

    fn mul(self, rhs: &BipotentElem) -> BipotentElem {
        match (self, rhs) {
            (BipotentElem::Value(a), BipotentElem::Value(b)) => BipotentElem::Value(a + b),
            _ => BipotentElem::Zero,
        }
    }
}

impl Semiring for BipotentElem {
    fn zero() -> Self {
        BipotentElem::Zero
    }

    fn one() -> Self {
        BipotentElem::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        BipotentElem::is_zero(self)
    }

    fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return BipotentElem::one();
        }
        match self {
            BipotentElem::Zero => BipotentElem::Zero,
            BipotentElem::Value(g) => BipotentElem::Value(g * Rational::from_integer(k.into())),
        }
    }
}

impl fmt::Display for BipotentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipotentElem::Zero => write!(f, "-inf"),
            BipotentElem::Value(g) => write!(f, "{}", render_rational(g)),
        }
    }
}

impl std::str::FromStr for BipotentElem {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_bipotent(s)
    }
}
