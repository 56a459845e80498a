//! The standard supertropical semifield `U(Γ)` over the value group
//! `Γ = (ℚ, +)`.
//!
//! `U` is the disjoint union of tangible elements `𝒯`, ghost elements `𝒢`,
//! and zero. Both `𝒯` and `𝒢` are copies of `Γ`; the tag records whether a
//! value carries exact ("tangible") or collapsed ("ghost") information.
//! Arithmetic follows the supertropical axioms:
//!
//! * the element `e = 1 + 1` is idempotent and `eU = 𝒢 ∪ {0}` is an ideal,
//! * `eU` is bipotent (it is a copy of the max-plus semifield),
//! * if `ex < ey` then `x + y = y`,
//! * if `ex = ey` then `x + y = ex` (equal summands collapse to a ghost),
//! * `𝒯·𝒯 ⊂ 𝒯` and `𝒢·𝒢 ⊂ 𝒢`.
//!
//! Here `1 = Tangible(0)` and `e = 1 + 1 = Ghost(0)`. The ghost map
//! `ν: x ↦ ex` retracts `U` onto `eU`; identifying `eU` with the bipotent
//! semifield `M` sends `Ghost(g) ↦ Value(g)` and fixes zero.
//!
//! The ghost-surpassing relation `x ⊨ y` ("x ghost-surpasses y") holds when
//! `x = y + z` for some `z ∈ eU`. It is a partial order compatible with
//! multiplication, and it is rigid on tangibles: a tangible-or-zero `x` can
//! surpass `y` only by equality.

use crate::bipotent::BipotentElem;
use crate::rational::{render_rational, Rational};
use crate::semiring::Semiring;
use std::fmt;
use std::ops::{Add, Mul};

/// Element of `U(Γ)`: zero, a tangible value, or a ghost value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SupertropicalElem {
    Zero,
    Tangible(Rational),
    Ghost(Rational),
}

/// Element of the ghost ideal `eU = 𝒢 ∪ {0}`, stored through the
/// identification `eU ≅ M` with the bipotent semifield.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhostValue(BipotentElem);

impl SupertropicalElem {
    pub fn tangible(g: Rational) -> Self {
        SupertropicalElem::Tangible(g)
    }

    pub fn ghost(g: Rational) -> Self {
        SupertropicalElem::Ghost(g)
    }

    pub fn tangible_int(n: i64) -> Self {
        SupertropicalElem::Tangible(crate::rational::int(n))
    }

    pub fn ghost_int(n: i64) -> Self {
        SupertropicalElem::Ghost(crate::rational::int(n))
    }

    /// The multiplicative unit `1 = Tangible(0)`.
    pub fn one() -> Self {
        SupertropicalElem::Tangible(Rational::from_integer(0.into()))
    }

    /// The idempotent `e = 1 + 1 = Ghost(0)`.
    pub fn e() -> Self {
        SupertropicalElem::Ghost(Rational::from_integer(0.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SupertropicalElem::Zero)
    }

    pub fn is_tangible(&self) -> bool {
        matches!(self, SupertropicalElem::Tangible(_))
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self, SupertropicalElem::Ghost(_))
    }

    /// The predicate `𝒯 ∪ {0}`; zero is kept as its own tag but counts as
    /// tangible wherever the theory quantifies over tangible-or-zero values.
    pub fn is_tangible_or_zero(&self) -> bool {
        !self.is_ghost()
    }

    /// The ghost map `ν: x ↦ ex`, landing in the ghost ideal.
    pub fn ghost_map(&self) -> GhostValue {
        GhostValue(self.e_value())
    }

    /// The value `ex` under the identification `eU ≅ M`. Tag-blind: tangible
    /// and ghost copies of the same group value agree here.
    pub fn e_value(&self) -> BipotentElem {
        match self {
            SupertropicalElem::Zero => BipotentElem::Zero,
            SupertropicalElem::Tangible(g) | SupertropicalElem::Ghost(g) => {
                BipotentElem::Value(g.clone())
            }
        }
    }

    pub fn group_value(&self) -> Option<&Rational> {
        match self {
            SupertropicalElem::Zero => None,
            SupertropicalElem::Tangible(g) | SupertropicalElem::Ghost(g) => Some(g),
        }
    }

    /// Multiplicative inverse of a nonzero element; inverts the group value
    /// and keeps the tag (`eU` is closed under inversion of nonzero ghosts).
    pub fn inverse(&self) -> Option<Self> {
        match self {
            SupertropicalElem::Zero => None,
            SupertropicalElem::Tangible(g) => Some(SupertropicalElem::Tangible(-g)),
            SupertropicalElem::Ghost(g) => Some(SupertropicalElem::Ghost(-g)),
        }
    }

    /// Forgets the tag, turning the element into a ghost (zero stays zero).
    pub fn ghostify(&self) -> Self {
        match self {
            SupertropicalElem::Zero => SupertropicalElem::Zero,
            SupertropicalElem::Tangible(g) | SupertropicalElem::Ghost(g) => {
                SupertropicalElem::Ghost(g.clone())
            }
        }
    }
}

/// Ghost-surpassing relation `x ⊨ y`: some `z ∈ eU` satisfies `x = y + z`.
///
/// Decision rule: `x = y`, or `x` is a ghost with `ex ≥ ey`.
///
/// Derivation from the existential definition, by cases on the witness `z`:
/// `z = 0` yields exactly `x = y`. For `z = e·c` nonzero, `y + ec` is `y`
/// itself when `ey > ec` (no new `x`), and otherwise is the ghost of
/// `max(ey, ec)`; letting `c` range over the group, the reachable set is
/// precisely `{x ghost : ex ≥ ey}`. Both directions are checked against
/// [`gs_geq_existential`] in the test suite before the rule is trusted.
pub fn gs_geq(x: &SupertropicalElem, y: &SupertropicalElem) -> bool {
    x == y || (x.is_ghost() && x.e_value() >= y.e_value())
}

/// The existential definition of `⊨` decided by finite search.
///
/// A witness `z` with `x = y + z` can be assumed to be `0` or the ghost of
/// `ex` (adding a ghost strictly below `ex` cannot raise `y` to `x`, and one
/// above `ex` overshoots), so searching `z` over `{0, e·x, e·y}` plus offset
/// neighbors of those values is exhaustive. Reference implementation used to
/// validate [`gs_geq`]; quadratic in the candidate list, test-only speed.
pub fn gs_geq_existential(x: &SupertropicalElem, y: &SupertropicalElem) -> bool {
    let mut candidates = vec![SupertropicalElem::Zero];
    let offsets = [
        Rational::from_integer(0.into()),
        Rational::from_integer(1.into()),
        Rational::from_integer((-1).into()),
        Rational::new(1.into(), 2.into()),
        Rational::new((-1).into(), 2.into()),
    ];
    for base in [x, y] {
        if let Some(g) = base.group_value() {
            for off in &offsets {
                candidates.push(SupertropicalElem::Ghost(g + off));
            }
        }
    }
    candidates.iter().any(|z| &(y + z) == x)
}

impl Add for SupertropicalElem {
    type Output = SupertropicalElem;

    fn add(self, rhs: SupertropicalElem) -> SupertropicalElem {
        &self + &rhs
    }
}

impl Add for &SupertropicalElem {
    type Output = SupertropicalElem;

    fn add(self, rhs: &SupertropicalElem) -> SupertropicalElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let a = self.group_value().expect("nonzero");
        let b = rhs.group_value().expect("nonzero");
        match a.cmp(b) {
            std::cmp::Ordering::Less => rhs.clone(),
            std::cmp::Ordering::Greater => self.clone(),
            std::cmp::Ordering::Equal => SupertropicalElem::Ghost(a.clone()),
        }
    }
}

impl Mul for SupertropicalElem {
    type Output = SupertropicalElem;

    fn mul(self, rhs: SupertropicalElem) -> SupertropicalElem {
        &self * &rhs
    }
}

impl Mul for &SupertropicalElem {
    type Output = SupertropicalElem;

    fn mul(self, rhs: &SupertropicalElem) -> SupertropicalElem {
        match (self, rhs) {
            (SupertropicalElem::Zero, _) | (_, SupertropicalElem::Zero) => SupertropicalElem::Zero,
            (SupertropicalElem::Tangible(a), SupertropicalElem::Tangible(b)) => {
                SupertropicalElem::Tangible(a + b)
            }
            _ => {
                let a = self.group_value().expect("nonzero");
                let b = rhs.group_value().expect("nonzero");
                SupertropicalElem::Ghost(a + b)
            }
        }
    }
}

impl Semiring for SupertropicalElem {
    fn zero() -> Self {
        SupertropicalElem::Zero
    }

    fn one() -> Self {
        SupertropicalElem::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        SupertropicalElem::is_zero(self)
    }

    fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return SupertropicalElem::one();
        }
        let factor = Rational::from_integer(k.into());
        match self {
            SupertropicalElem::Zero => SupertropicalElem::Zero,
            SupertropicalElem::Tangible(g) => SupertropicalElem::Tangible(g * &factor),
            SupertropicalElem::Ghost(g) => SupertropicalElem::Ghost(g * &factor),
        }
    }
}

impl fmt::Display for SupertropicalElem {
    /// Grammar: `0` for zero, `t<rational>` for tangibles, `g<rational>`
    /// for ghosts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupertropicalElem::Zero => write!(f, "0"),
            SupertropicalElem::Tangible(g) => write!(f, "t{}", render_rational(g)),
            SupertropicalElem::Ghost(g) => write!(f, "g{}", render_rational(g)),
        }
    }
}

impl std::str::FromStr for SupertropicalElem {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_supertropical(s)
    }
}

impl GhostValue {
    pub fn zero() -> Self {
        GhostValue(BipotentElem::Zero)
    }

    pub fn ghost(g: Rational) -> Self {
        GhostValue(BipotentElem::Value(g))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// View through the identification `eU ≅ M`.
    pub fn as_bipotent(&self) -> &BipotentElem {
        &self.0
    }

    pub fn into_bipotent(self) -> BipotentElem {
        self.0
    }
}

impl From<BipotentElem> for GhostValue {
    fn from(m: BipotentElem) -> Self {
        GhostValue(m)
    }
}

impl From<GhostValue> for SupertropicalElem {
    fn from(z: GhostValue) -> Self {
        match z.0 {
            BipotentElem::Zero => SupertropicalElem::Zero,
            BipotentElem::Value(g) => SupertropicalElem::Ghost(g),
        }
    }
}

impl fmt::Display for GhostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SupertropicalElem::from(self.clone()).fmt(f)
    }
}
