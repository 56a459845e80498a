//! Valuations on the rationals with values in the bipotent semifield.
//!
//! A valuation is a map `v: R → M` with `v(0) = 0`, `v(1) = 1`,
//! `v(ab) = v(a)v(b)`, and `v(a+b) ≤ v(a) + v(b)`; in the max-plus
//! realization the last axiom reads `v(a+b) ≤ max(v(a), v(b))`. Two
//! instances are provided on `R = ℚ` (and its subsemiring `ℚ≥0`): the
//! `p`-adic valuations and the trivial valuation.
//!
//! Sign convention: the classical `p`-adic order `ord_p` is subadditive in
//! min-plus; this crate works throughout in max-plus, so the `p`-adic rule
//! here is `v(a) = Value(−ord_p(a))`. High `p`-divisibility means a small
//! value.
//!
//! A valuation is *strict* when `v(a+b) = v(a) + v(b)` always, and *strong*
//! when that equality holds whenever `v(a) ≠ v(b)`. On a ring the presence
//! of `−1` makes every valuation strong and none strict (witness `a = b = 1`,
//! where `v(a+b)` may drop below the unit while `v(a)+v(b)` is the unit).
//! Both properties quantify over the whole source, so the classifier here is
//! a falsifier: it hunts for witnesses on a sample set and reports
//! "strict/strong on samples" only in their absence.

use crate::bipotent::BipotentElem;
use crate::parse::ParseError;
use crate::rational::{int_multiplicity, Rational};
use std::fmt;
use thiserror::Error;

/// Sample source: the field ℚ or the subsemiring ℚ≥0 (which is the set of
/// sums of squares of rationals).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Q,
    Qplus,
}

impl Source {
    pub fn contains(&self, a: &Rational) -> bool {
        match self {
            Source::Q => true,
            Source::Qplus => *a >= Rational::from_integer(0.into()),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Q => write!(f, "Q"),
            Source::Qplus => write!(f, "Qplus"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{p} is not prime")]
pub struct NotPrime {
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    /// `v(a) = Value(−ord_p(a))`, `v(0) = Zero`.
    Padic(u64),
    /// `v(a) = Value(0)` for `a ≠ 0`, `v(0) = Zero`.
    Trivial,
}

/// A named valuation `ℚ → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    rule: Rule,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `p`-adic valuation in max-plus convention; rejects composite `p`.
pub fn padic_valuation(p: u64) -> Result<Valuation, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime { p });
    }
    Ok(Valuation {
        rule: Rule::Padic(p),
    })
}

/// The trivial valuation: unit on every nonzero element.
pub fn trivial_valuation() -> Valuation {
    Valuation { rule: Rule::Trivial }
}

impl Valuation {
    pub fn apply(&self, a: &Rational) -> BipotentElem {
        if a.numer().sign() == num_bigint::Sign::NoSign {
            return BipotentElem::Zero;
        }
        match &self.rule {
            Rule::Trivial => BipotentElem::one(),
            Rule::Padic(p) => {
                // a is in lowest terms, so at most one of numerator and
                // denominator is divisible by p.
                let ord = int_multiplicity(*p, a.numer()) - int_multiplicity(*p, a.denom());
                BipotentElem::Value(Rational::from_integer((-ord).into()))
            }
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Padic(p) => write!(f, "padic:{p}"),
            Rule::Trivial => write!(f, "trivial"),
        }
    }
}

impl std::str::FromStr for Valuation {
    type Err = ParseError;

    /// Accepts the CLI spellings `trivial` and `padic:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "trivial" {
            return Ok(trivial_valuation());
        }
        if let Some(rest) = s.strip_prefix("padic:") {
            let p: u64 = rest.parse().map_err(|_| ParseError {
                position: "padic:".len(),
                message: format!("expected a prime after 'padic:', found '{rest}'"),
            })?;
            return padic_valuation(p).map_err(|e| ParseError {
                position: "padic:".len(),
                message: e.to_string(),
            });
        }
        Err(ParseError {
            position: 0,
            message: format!("unknown valuation '{s}'; expected 'trivial' or 'padic:<p>'"),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValuationLaw {
    Multiplicativity,
    Subadditivity,
}

impl fmt::Display for ValuationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationLaw::Multiplicativity => write!(f, "multiplicativity"),
            ValuationLaw::Subadditivity => write!(f, "subadditivity"),
        }
    }
}

/// A concrete law failure on a sample pair: the produced and required sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationViolation {
    pub law: ValuationLaw,
    pub a: Rational,
    pub b: Rational,
    pub got: BipotentElem,
    pub bound: BipotentElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub unit_ok: bool,
    pub zero_ok: bool,
    pub violations: Vec<ValuationViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.zero_ok && self.violations.is_empty()
    }
}

/// Checks `v(0) = 0`, `v(1) = 1`, and on every sample pair the exact
/// multiplicativity `v(ab) = v(a)v(b)` and subadditivity
/// `v(a+b) ≤ v(a) + v(b)`.
pub fn check_valuation_axioms(v: &Valuation, pairs: &[(Rational, Rational)]) -> AxiomReport {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let mut violations = Vec::new();
    for (a, b) in pairs {
        let (va, vb) = (v.apply(a), v.apply(b));
        let product = v.apply(&(a * b));
        let product_bound = &va * &vb;
        if product != product_bound {
            violations.push(ValuationViolation {
                law: ValuationLaw::Multiplicativity,
                a: a.clone(),
                b: b.clone(),
                got: product,
                bound: product_bound,
            });
        }
        let sum = v.apply(&(a + b));
        let sum_bound = &va + &vb;
        if !sum.leq(&sum_bound) {
            violations.push(ValuationViolation {
                law: ValuationLaw::Subadditivity,
                a: a.clone(),
                b: b.clone(),
                got: sum,
                bound: sum_bound,
            });
        }
    }
    AxiomReport {
        pairs_checked: pairs.len(),
        unit_ok: v.apply(&one) == BipotentElem::one(),
        zero_ok: v.apply(&zero) == BipotentElem::Zero,
        violations,
    }
}

/// A pair where an equality form of subadditivity fails: `v(a+b)` differs
/// from `v(a) + v(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityWitness {
    pub a: Rational,
    pub b: Rational,
    pub v_a: BipotentElem,
    pub v_b: BipotentElem,
    pub v_sum: BipotentElem,
    pub expected: BipotentElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictStrongReport {
    pub pairs_checked: usize,
    /// Pairs with `v(a+b) ≠ v(a) + v(b)`.
    pub strict_violations: Vec<EqualityWitness>,
    /// Pairs with `v(a) ≠ v(b)` yet `v(a+b) ≠ v(a) + v(b)`.
    pub strong_violations: Vec<EqualityWitness>,
}

impl StrictStrongReport {
    pub fn strict_on_samples(&self) -> bool {
        self.strict_violations.is_empty()
    }

    pub fn strong_on_samples(&self) -> bool {
        self.strong_violations.is_empty()
    }
}

/// Hunts for strictness and strongness witnesses on the sample pairs.
pub fn classify_strict_strong(
    v: &Valuation,
    pairs: &[(Rational, Rational)],
) -> StrictStrongReport {
    let mut strict_violations = Vec::new();
    let mut strong_violations = Vec::new();
    for (a, b) in pairs {
        let (va, vb) = (v.apply(a), v.apply(b));
        let v_sum = v.apply(&(a + b));
        let expected = &va + &vb;
        if v_sum != expected {
            let witness = EqualityWitness {
                a: a.clone(),
                b: b.clone(),
                v_a: va.clone(),
                v_b: vb.clone(),
                v_sum,
                expected,
            };
            if va != vb {
                strong_violations.push(witness.clone());
            }
            strict_violations.push(witness);
        }
    }
    StrictStrongReport {
        pairs_checked: pairs.len(),
        strict_violations,
        strong_violations,
    }
}
