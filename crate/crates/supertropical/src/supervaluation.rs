//! Supervaluations: refinements of a valuation with values in the
//! supertropical semifield.
//!
//! A supervaluation `φ: R → U` is multiplicative with `φ(0) = 0`,
//! `φ(1) = 1`, and satisfies `eφ(a+b) ≤ eφ(a) + eφ(b)`; it covers the
//! valuation `v = ν∘φ` read off through the ghost map. Two canonical
//! members of the cover set of `v` are built here:
//!
//! * the tangible lift `a ↦ Tangible(v(a))`, which is tangible and strong;
//! * the ghost supervaluation `a ↦ Ghost(v(a))`, the valuation itself viewed
//!   inside `eU`; it is the bottom element of the cover set.
//!
//! Strongness has two equivalent readings, both implemented: the direct one
//! (a tangible sum of images forces `φ(a+b) = φ(a) + φ(b)`) and the
//! ghost-surpassing one (`φ(a) + φ(b) ⊨ φ(a+b)` for all pairs). Their
//! pointwise agreement on genuine supervaluations is part of the test suite.
//!
//! Why the tangible lift of a strong valuation is strong: `φ(a) + φ(b)` is
//! tangible only when the e-values `v(a), v(b)` differ or one argument is
//! zero; in either case strongness of `v` gives `v(a+b) = max(v(a), v(b))`,
//! so `φ(a+b)` is the tangible of that maximum, which is exactly
//! `φ(a) + φ(b)`.
//!
//! Dominance `φ ≥ ψ` means `ψ = α∘φ` for a transmission `α` that respects
//! the semiring structure on the subsemiring generated by the image of `φ`.
//! The verifier never searches for `α`; it checks a supplied rule on a
//! finite fragment: images and ghost-images of the samples, closed under
//! sums and products to depth 2, with a hard size cap. Exceeding the cap is
//! an explicit refusal, not a silent truncation.

use crate::bipotent::BipotentElem;
use crate::rational::Rational;
use crate::semifield::{gs_geq, SupertropicalElem};
use crate::valuation::Valuation;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

type SupervaluationRule = dyn Fn(&Rational) -> SupertropicalElem + Send + Sync;

/// A named pure rule `ℚ → U` together with the valuation it is meant to
/// cover. Whether it genuinely covers it is established by [`check_cover`],
/// not assumed; corrupted rules are constructible on purpose, as negative
/// fixtures for the checkers.
#[derive(Clone)]
pub struct Supervaluation {
    name: String,
    covered: Valuation,
    rule: Arc<SupervaluationRule>,
}

impl Supervaluation {
    pub fn from_rule(
        name: &str,
        covered: Valuation,
        rule: impl Fn(&Rational) -> SupertropicalElem + Send + Sync + 'static,
    ) -> Self {
        Supervaluation {
            name: name.to_string(),
            covered,
            rule: Arc::new(rule),
        }
    }

    pub fn apply(&self, a: &Rational) -> SupertropicalElem {
        (self.rule)(a)
    }

    pub fn covered_valuation(&self) -> &Valuation {
        &self.covered
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for Supervaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Supervaluation")
            .field("name", &self.name)
            .field("covered", &self.covered)
            .finish_non_exhaustive()
    }
}

impl fmt::Display for Supervaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// The tangible lift of `v`: zero to zero, everything else to the tangible
/// copy of its value. Strong whenever `v` is strong (see module docs).
pub fn tangible_lift(v: &Valuation) -> Supervaluation {
    let inner = v.clone();
    Supervaluation::from_rule(
        &format!("tangible_lift({v})"),
        v.clone(),
        move |a| match inner.apply(a) {
            BipotentElem::Zero => SupertropicalElem::Zero,
            BipotentElem::Value(g) => SupertropicalElem::Tangible(g),
        },
    )
}

/// The valuation itself viewed inside the ghost ideal: zero to zero,
/// everything else to the ghost copy of its value.
pub fn ghost_supervaluation(v: &Valuation) -> Supervaluation {
    let inner = v.clone();
    Supervaluation::from_rule(
        &format!("ghost_supervaluation({v})"),
        v.clone(),
        move |a| match inner.apply(a) {
            BipotentElem::Zero => SupertropicalElem::Zero,
            BipotentElem::Value(g) => SupertropicalElem::Ghost(g),
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverLaw {
    ZeroValue,
    UnitValue,
    Multiplicativity,
    Subadditivity,
    CoverIdentity,
}

impl fmt::Display for CoverLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverLaw::ZeroValue => write!(f, "zero value"),
            CoverLaw::UnitValue => write!(f, "unit value"),
            CoverLaw::Multiplicativity => write!(f, "multiplicativity"),
            CoverLaw::Subadditivity => write!(f, "e-subadditivity"),
            CoverLaw::CoverIdentity => write!(f, "cover identity"),
        }
    }
}

/// A law failure at a concrete sample; `got`/`expected` are rendered in the
/// element grammar since different laws compare different value kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverViolation {
    pub law: CoverLaw,
    pub a: Rational,
    pub b: Option<Rational>,
    pub got: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub pairs_checked: usize,
    pub violations: Vec<CoverViolation>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies on every sample pair that `φ` is multiplicative, that the
/// e-values are subadditive, and that `ν∘φ` reproduces the covered
/// valuation; also pins `φ(0) = 0` and `eφ(1) = 1`.
pub fn check_cover(phi: &Supervaluation, pairs: &[(Rational, Rational)]) -> CoverReport {
    let v = phi.covered_valuation().clone();
    let mut violations = Vec::new();
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());

    let phi_zero = phi.apply(&zero);
    if phi_zero != SupertropicalElem::Zero {
        violations.push(CoverViolation {
            law: CoverLaw::ZeroValue,
            a: zero.clone(),
            b: None,
            got: phi_zero.to_string(),
            expected: SupertropicalElem::Zero.to_string(),
        });
    }
    let phi_one = phi.apply(&one);
    if phi_one.e_value() != BipotentElem::one() {
        violations.push(CoverViolation {
            law: CoverLaw::UnitValue,
            a: one.clone(),
            b: None,
            got: phi_one.to_string(),
            expected: SupertropicalElem::one().to_string(),
        });
    }

    for (a, b) in pairs {
        let (fa, fb) = (phi.apply(a), phi.apply(b));
        let product = phi.apply(&(a * b));
        let product_expected = &fa * &fb;
        if product != product_expected {
            violations.push(CoverViolation {
                law: CoverLaw::Multiplicativity,
                a: a.clone(),
                b: Some(b.clone()),
                got: product.to_string(),
                expected: product_expected.to_string(),
            });
        }
        let e_sum = phi.apply(&(a + b)).e_value();
        let e_bound = fa.e_value() + fb.e_value();
        if !e_sum.leq(&e_bound) {
            violations.push(CoverViolation {
                law: CoverLaw::Subadditivity,
                a: a.clone(),
                b: Some(b.clone()),
                got: e_sum.to_string(),
                expected: e_bound.to_string(),
            });
        }
        for c in [a, b] {
            let covered = phi.apply(c).ghost_map().into_bipotent();
            let direct = v.apply(c);
            if covered != direct {
                violations.push(CoverViolation {
                    law: CoverLaw::CoverIdentity,
                    a: c.clone(),
                    b: None,
                    got: covered.to_string(),
                    expected: direct.to_string(),
                });
            }
        }
    }
    CoverReport {
        pairs_checked: pairs.len(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangibleReport {
    pub samples_checked: usize,
    /// Samples whose image is a ghost.
    pub witnesses: Vec<(Rational, SupertropicalElem)>,
}

impl TangibleReport {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Whether all sampled images are tangible or zero.
pub fn is_tangible(phi: &Supervaluation, samples: &[Rational]) -> TangibleReport {
    let witnesses = samples
        .iter()
        .filter_map(|a| {
            let image = phi.apply(a);
            image.is_ghost().then(|| (a.clone(), image))
        })
        .collect();
    TangibleReport {
        samples_checked: samples.len(),
        witnesses,
    }
}

/// A pair breaking a strongness condition; `lhs = φ(a) + φ(b)`,
/// `rhs = φ(a+b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongWitness {
    pub a: Rational,
    pub b: Rational,
    pub lhs: SupertropicalElem,
    pub rhs: SupertropicalElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReport {
    pub pairs_checked: usize,
    pub witnesses: Vec<StrongWitness>,
}

impl StrongReport {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Direct strongness: on every pair, if `φ(a) + φ(b)` is tangible then it
/// equals `φ(a+b)`.
pub fn is_strong(phi: &Supervaluation, pairs: &[(Rational, Rational)]) -> StrongReport {
    let witnesses = pairs
        .iter()
        .filter_map(|(a, b)| {
            let lhs = &phi.apply(a) + &phi.apply(b);
            if !lhs.is_tangible() {
                return None;
            }
            let rhs = phi.apply(&(a + b));
            (lhs != rhs).then(|| StrongWitness {
                a: a.clone(),
                b: b.clone(),
                lhs,
                rhs,
            })
        })
        .collect();
    StrongReport {
        pairs_checked: pairs.len(),
        witnesses,
    }
}

/// Ghost-surpassing strongness: `φ(a) + φ(b) ⊨ φ(a+b)` on every pair.
/// Equivalent to [`is_strong`] pointwise; both are kept so the equivalence
/// itself can be tested.
pub fn gs_strong_check(phi: &Supervaluation, pairs: &[(Rational, Rational)]) -> StrongReport {
    let witnesses = pairs
        .iter()
        .filter_map(|(a, b)| {
            let lhs = &phi.apply(a) + &phi.apply(b);
            let rhs = phi.apply(&(a + b));
            (!gs_geq(&lhs, &rhs)).then(|| StrongWitness {
                a: a.clone(),
                b: b.clone(),
                lhs,
                rhs,
            })
        })
        .collect();
    StrongReport {
        pairs_checked: pairs.len(),
        witnesses,
    }
}

/// A transmission rule `α: U → U` for dominance checks: a closed form or a
/// finite lookup table on the fragment.
#[derive(Clone, Debug)]
pub enum Transmission {
    GhostMap,
    Identity,
    Table(Vec<(SupertropicalElem, SupertropicalElem)>),
}

impl Transmission {
    /// Applies the rule to one element; `None` when a table rule has no
    /// entry for it. Linear scan for tables; batch verification uses an
    /// internal index instead.
    pub fn apply(&self, x: &SupertropicalElem) -> Option<SupertropicalElem> {
        match self {
            Transmission::GhostMap => Some(x.ghostify()),
            Transmission::Identity => Some(x.clone()),
            Transmission::Table(pairs) => {
                pairs.iter().find(|(k, _)| k == x).map(|(_, v)| v.clone())
            }
        }
    }

    fn lookup(&self, table: &HashMap<SupertropicalElem, SupertropicalElem>, x: &SupertropicalElem) -> Option<SupertropicalElem> {
        match self {
            Transmission::GhostMap => Some(x.ghostify()),
            Transmission::Identity => Some(x.clone()),
            Transmission::Table(_) => table.get(x).cloned(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Transmission::GhostMap => "ghost_map",
            Transmission::Identity => "identity",
            Transmission::Table(_) => "table",
        }
    }
}

/// Claim that `phi` dominates `psi` via `alpha`, to be verified on the
/// fragment generated by the samples.
#[derive(Clone, Debug)]
pub struct DominanceWitness {
    pub phi: Supervaluation,
    pub psi: Supervaluation,
    pub alpha: Transmission,
    pub samples: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("fragment closure exceeded the cap of {cap} elements (reached {reached}); refusing to verify a truncated fragment")]
pub struct FragmentOverflow {
    pub cap: usize,
    pub reached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominanceViolation {
    /// `α` undefined on a fragment element (table rules only).
    MissingMapping { x: SupertropicalElem },
    ZeroNotPreserved { got: SupertropicalElem },
    AddLaw {
        x: SupertropicalElem,
        y: SupertropicalElem,
        got: SupertropicalElem,
        expected: SupertropicalElem,
    },
    MulLaw {
        x: SupertropicalElem,
        y: SupertropicalElem,
        got: SupertropicalElem,
        expected: SupertropicalElem,
    },
    /// `α(φ(a)) ≠ ψ(a)` at a sample.
    Composition {
        a: Rational,
        got: SupertropicalElem,
        expected: SupertropicalElem,
    },
}

impl fmt::Display for DominanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DominanceViolation::MissingMapping { x } => {
                write!(f, "alpha undefined on fragment element {x}")
            }
            DominanceViolation::ZeroNotPreserved { got } => {
                write!(f, "alpha(0) = {got}, want 0")
            }
            DominanceViolation::AddLaw { x, y, got, expected } => {
                write!(f, "alpha({x} + {y}) = {got}, want {expected}")
            }
            DominanceViolation::MulLaw { x, y, got, expected } => {
                write!(f, "alpha({x} * {y}) = {got}, want {expected}")
            }
            DominanceViolation::Composition { a, got, expected } => {
                write!(f, "alpha(phi({a})) = {got}, want psi({a}) = {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceReport {
    pub fragment_size: usize,
    pub pairs_checked: usize,
    pub violations: Vec<DominanceViolation>,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const DEFAULT_FRAGMENT_CAP: usize = 512;

/// The subsemiring fragment generated by `{φ(a), eφ(a)}` over the samples
/// (zero and one always included), closed under sums and products to depth
/// `depth`. Deterministic insertion order; errors out past `cap`.
pub fn fragment_closure(
    phi: &Supervaluation,
    samples: &[Rational],
    depth: usize,
    cap: usize,
) -> Result<Vec<SupertropicalElem>, FragmentOverflow> {
    let mut order: Vec<SupertropicalElem> = Vec::new();
    let mut seen: HashSet<SupertropicalElem> = HashSet::new();
    let push = |order: &mut Vec<SupertropicalElem>,
                    seen: &mut HashSet<SupertropicalElem>,
                    x: SupertropicalElem| {
        if seen.insert(x.clone()) {
            order.push(x);
        }
    };
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    for a in [&zero, &one].into_iter().chain(samples) {
        let image = phi.apply(a);
        push(&mut order, &mut seen, image.ghostify());
        push(&mut order, &mut seen, image);
    }
    for _ in 0..depth {
        let snapshot = order.clone();
        for x in &snapshot {
            for y in &snapshot {
                push(&mut order, &mut seen, x + y);
                push(&mut order, &mut seen, x * y);
                if order.len() > cap {
                    return Err(FragmentOverflow {
                        cap,
                        reached: order.len(),
                    });
                }
            }
        }
    }
    Ok(order)
}

/// Verifies a dominance claim: `α` preserves zero, sums, and products over
/// the fragment, and `ψ = α∘φ` on the samples (zero and one included, which
/// pins the fragment-relative units).
pub fn verify_dominance(
    w: &DominanceWitness,
    cap: usize,
) -> Result<DominanceReport, FragmentOverflow> {
    let fragment = fragment_closure(&w.phi, &w.samples, 2, cap)?;
    let table: HashMap<SupertropicalElem, SupertropicalElem> = match &w.alpha {
        Transmission::Table(pairs) => pairs.iter().cloned().collect(),
        _ => HashMap::new(),
    };
    let alpha = |x: &SupertropicalElem| w.alpha.lookup(&table, x);

    let mut violations = Vec::new();
    let mut missing: HashSet<SupertropicalElem> = HashSet::new();
    let require = |violations: &mut Vec<DominanceViolation>,
                       missing: &mut HashSet<SupertropicalElem>,
                       x: &SupertropicalElem|
     -> Option<SupertropicalElem> {
        match alpha(x) {
            Some(y) => Some(y),
            None => {
                if missing.insert(x.clone()) {
                    violations.push(DominanceViolation::MissingMapping { x: x.clone() });
                }
                None
            }
        }
    };

    // The fragments' units need not be U's unit (the ghost-side fragment has
    // the ghost unit), so unit preservation is the composition identity at
    // a = 1 below; the zero is shared and checked directly.
    if let Some(got) = require(&mut violations, &mut missing, &SupertropicalElem::Zero) {
        if got != SupertropicalElem::Zero {
            violations.push(DominanceViolation::ZeroNotPreserved { got });
        }
    }

    let mut pairs_checked = 0;
    for x in &fragment {
        for y in &fragment {
            pairs_checked += 1;
            let (ax, ay) = match (
                require(&mut violations, &mut missing, x),
                require(&mut violations, &mut missing, y),
            ) {
                (Some(ax), Some(ay)) => (ax, ay),
                _ => continue,
            };
            let sum = x + y;
            if let Some(a_sum) = require(&mut violations, &mut missing, &sum) {
                let expected = &ax + &ay;
                if a_sum != expected {
                    violations.push(DominanceViolation::AddLaw {
                        x: x.clone(),
                        y: y.clone(),
                        got: a_sum,
                        expected,
                    });
                }
            }
            let prod = x * y;
            if let Some(a_prod) = require(&mut violations, &mut missing, &prod) {
                let expected = &ax * &ay;
                if a_prod != expected {
                    violations.push(DominanceViolation::MulLaw {
                        x: x.clone(),
                        y: y.clone(),
                        got: a_prod,
                        expected,
                    });
                }
            }
        }
    }

    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    for a in [&zero, &one].into_iter().chain(&w.samples) {
        let image = w.phi.apply(a);
        if let Some(got) = require(&mut violations, &mut missing, &image) {
            let expected = w.psi.apply(a);
            if got != expected {
                violations.push(DominanceViolation::Composition {
                    a: a.clone(),
                    got,
                    expected,
                });
            }
        }
    }

    Ok(DominanceReport {
        fragment_size: fragment.len(),
        pairs_checked,
        violations,
    })
}
