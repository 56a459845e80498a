//! Machine verification of the supertropical lifting theorem and its
//! tropical corollary.
//!
//! The lifting theorem states: for a strong supervaluation `φ: Q → U`, a
//! polynomial `f = Σ c_i λ^i`, and a point `a`, the supertropical value of
//! the coefficientwise image `φ(f)` at `φ(a)` ghost-surpasses the image of
//! the exact value,
//!
//! ```text
//!     φ(f)(φ(a))  ⊨  φ(f(a)).
//! ```
//!
//! Both sides are computable exactly, so each instance `(f, a, φ)` is a
//! decidable check. The corollary (the tropical lifting statement): if `a`
//! is a root of `f` then `v(a)` lies in the corner locus of the
//! tropicalization `ṽ(f)`, because the right-hand side above collapses to
//! `φ(0) = 0` and the left-hand side must then be ghost or zero, which for
//! a tangible supervaluation forces at least two monomials of `ṽ(f)` to
//! attain the maximum together.
//!
//! [`check_theorem51`] verifies a single surpassing instance,
//! [`check_kapranov`] verifies a single corner-locus membership,
//! [`generate_root_instances`] and [`generate_theorem51_instances`] build
//! deterministic pseudo-random batches, and
//! [`check_dominance_monotonicity`] verifies that the surpassing statement
//! transports along a dominance transmission. A `false` verdict from any
//! check is a refutation event: the calling suite must stop and report it
//! loudly rather than continue.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bipotent::BipotentElem;
use crate::exec;
use crate::poly::{corner_locus_member, poly_eval, tilde_map, tilde_v, PolyError, SparsePoly};
use crate::rational::{int, Rational};
use crate::sample::{pow_big, rng_from_seed};
use crate::semifield::{gs_geq, SupertropicalElem};
use crate::supervaluation::{
    is_strong, tangible_lift, verify_dominance, DominanceReport, DominanceWitness,
    FragmentOverflow, Supervaluation, Transmission, DEFAULT_FRAGMENT_CAP,
};
use crate::valuation::{padic_valuation, NotPrime, Valuation};

/// One surpassing check: a polynomial, a point, and a supervaluation.
#[derive(Clone, Debug)]
pub struct Theorem51Instance {
    pub f: SparsePoly<Rational>,
    pub a: Vec<Rational>,
    pub phi: Supervaluation,
}

impl Theorem51Instance {
    pub fn new(f: SparsePoly<Rational>, a: Vec<Rational>, phi: Supervaluation) -> Self {
        Theorem51Instance { f, a, phi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Theorem51Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// The strongness precondition failed on the instance's own fragment;
    /// the theorem does not apply, so this is a rejected input, not a
    /// refutation.
    #[error("supervaluation fails strongness at ({a}, {b}): phi(a) + phi(b) = {lhs} is tangible but phi(a + b) = {rhs}")]
    NotStrong {
        a: Rational,
        b: Rational,
        lhs: SupertropicalElem,
        rhs: SupertropicalElem,
    },
}

/// Outcome of one surpassing check. `gs_holds` is the theorem statement
/// itself; the other flags are consequences that must also hold and are
/// asserted on every instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem51Report {
    /// `φ(f)` evaluated at `φ(a)`.
    pub lhs: SupertropicalElem,
    /// `φ(f(a))`.
    pub rhs: SupertropicalElem,
    /// `lhs ⊨ rhs`.
    pub gs_holds: bool,
    /// Sides may differ only by ghostness: `lhs = rhs` or `lhs` is ghost.
    pub ghost_discrepancy_ok: bool,
    /// When `rhs = 0` and a tangible monomial attains the maximum, at
    /// least two monomials must tie (this is what puts the valuation of a
    /// root on the corner locus). `None` when the premise does not apply.
    pub root_tie: Option<bool>,
}

impl Theorem51Report {
    /// True when any asserted consequence failed. A refutation aborts the
    /// suite: it means the implementation and the theorem disagree.
    pub fn refuted(&self) -> bool {
        !self.gs_holds || !self.ghost_discrepancy_ok || self.root_tie == Some(false)
    }
}

/// Caps for the sampled strongness precondition and for generators.
pub const STRONGNESS_ELEMENT_CAP: usize = 48;
pub const STRONGNESS_PAIR_BUDGET: usize = 256;
pub const MAX_INSTANCES: usize = 1_000_000;

fn dedup_push(list: &mut Vec<Rational>, x: Rational) {
    if !list.contains(&x) {
        list.push(x);
    }
}

/// Deterministic sample pairs for the strongness gate: the coefficients of
/// `f` and the coordinates of `a`, extended by their pairwise sums and
/// products (capped), paired exhaustively over the base and by a fixed
/// stride over the extension so the total stays within budget.
fn strongness_pairs(f: &SparsePoly<Rational>, a: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut base: Vec<Rational> = Vec::new();
    for (_, c) in f.terms() {
        dedup_push(&mut base, c.clone());
    }
    for x in a {
        dedup_push(&mut base, x.clone());
    }

    let mut extended = base.clone();
    'grow: for i in 0..base.len() {
        for j in i..base.len() {
            if extended.len() >= STRONGNESS_ELEMENT_CAP {
                break 'grow;
            }
            dedup_push(&mut extended, &base[i] + &base[j]);
            if extended.len() >= STRONGNESS_ELEMENT_CAP {
                break 'grow;
            }
            dedup_push(&mut extended, &base[i] * &base[j]);
        }
    }

    let mut pairs = Vec::new();
    for i in 0..base.len() {
        for j in i..base.len() {
            pairs.push((base[i].clone(), base[j].clone()));
        }
    }
    let triangle = extended.len() * (extended.len() + 1) / 2;
    let remaining = STRONGNESS_PAIR_BUDGET.saturating_sub(pairs.len());
    if remaining > 0 && triangle > 0 {
        let step = (triangle.div_ceil(remaining)).max(1);
        let mut k = 0usize;
        for i in 0..extended.len() {
            for j in i..extended.len() {
                if k % step == 0 {
                    pairs.push((extended[i].clone(), extended[j].clone()));
                }
                k += 1;
            }
        }
    }
    pairs
}

/// Wraps a supervaluation with a value cache; the strongness gate and the
/// evaluation revisit the same rationals many times per instance.
fn memoized(phi: &Supervaluation) -> Supervaluation {
    let inner = phi.clone();
    let cache: Mutex<std::collections::HashMap<Rational, SupertropicalElem>> =
        Mutex::new(std::collections::HashMap::new());
    Supervaluation::from_rule(phi.name(), phi.covered_valuation().clone(), move |a| {
        let mut map = cache.lock().expect("supervaluation cache poisoned");
        if let Some(v) = map.get(a) {
            return v.clone();
        }
        let v = inner.apply(a);
        map.insert(a.clone(), v.clone());
        v
    })
}

struct CoreEvaluation {
    lhs: SupertropicalElem,
    rhs: SupertropicalElem,
    summands: BTreeMap<Vec<u32>, SupertropicalElem>,
}

fn evaluate_sides(
    f: &SparsePoly<Rational>,
    a: &[Rational],
    phi: &Supervaluation,
) -> Result<CoreEvaluation, PolyError> {
    let tilde = tilde_map(phi, f);
    let image: Vec<SupertropicalElem> = a.iter().map(|x| phi.apply(x)).collect();
    let summands = tilde.term_values(&image)?;
    let lhs = poly_eval(&tilde, &image)?;
    let rhs = phi.apply(&f.eval(a)?);
    Ok(CoreEvaluation { lhs, rhs, summands })
}

/// Verifies one surpassing instance. The supervaluation must pass the
/// sampled strongness gate on the instance's coefficient-and-coordinate
/// fragment before the sides are compared; a gate failure is an error, a
/// `false` comparison is a refutation.
pub fn check_theorem51(inst: &Theorem51Instance) -> Result<Theorem51Report, Theorem51Error> {
    if inst.f.arity() != inst.a.len() {
        return Err(PolyError::ArityMismatch {
            expected: inst.f.arity(),
            got: inst.a.len(),
        }
        .into());
    }
    let phi = memoized(&inst.phi);
    let gate = is_strong(&phi, &strongness_pairs(&inst.f, &inst.a));
    if let Some(w) = gate.witnesses.first() {
        return Err(Theorem51Error::NotStrong {
            a: w.a.clone(),
            b: w.b.clone(),
            lhs: w.lhs.clone(),
            rhs: w.rhs.clone(),
        });
    }

    let core = evaluate_sides(&inst.f, &inst.a, &phi)?;
    let gs_holds = gs_geq(&core.lhs, &core.rhs);
    let ghost_discrepancy_ok = core.lhs == core.rhs || core.lhs.is_ghost();
    let root_tie = if core.rhs.is_zero() && !core.lhs.is_zero() {
        let max_e = core.lhs.e_value();
        let at_max: Vec<&SupertropicalElem> = core
            .summands
            .values()
            .filter(|s| !s.is_zero() && s.e_value() == max_e)
            .collect();
        if at_max.iter().any(|s| s.is_tangible()) {
            Some(at_max.len() >= 2)
        } else {
            None
        }
    } else {
        None
    };

    Ok(Theorem51Report {
        lhs: core.lhs,
        rhs: core.rhs,
        gs_holds,
        ghost_discrepancy_ok,
        root_tie,
    })
}

/// Checks a batch in instance order; parallel when the `parallel` feature
/// is on. The merged output is deterministic either way.
pub fn run_theorem51_suite(
    instances: &[Theorem51Instance],
) -> Vec<Result<Theorem51Report, Theorem51Error>> {
    exec::map_collect(instances, check_theorem51)
}

/// One corner-locus membership check: a polynomial with a known root and
/// the valuation to tropicalize along.
#[derive(Clone, Debug)]
pub struct KapranovInstance {
    pub f: SparsePoly<Rational>,
    pub root: Vec<Rational>,
    pub v: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KapranovError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// The designated point is not a root, so the corollary's premise
    /// fails; this is a rejected input, not a refutation.
    #[error("designated point is not a root: f evaluates to {value}")]
    NotARoot { value: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KapranovReport {
    /// The valuation of the root, coordinatewise.
    pub xi: Vec<BipotentElem>,
    /// Whether `xi` lies on the corner locus of the tropicalization.
    pub member: bool,
}

/// Verifies that the valuation of a root lands on the corner locus of the
/// tropicalized polynomial. A `false` membership is a refutation.
pub fn check_kapranov(inst: &KapranovInstance) -> Result<KapranovReport, KapranovError> {
    let value = inst.f.eval(&inst.root)?;
    if value != int(0) {
        return Err(KapranovError::NotARoot { value });
    }
    let xi: Vec<BipotentElem> = inst.root.iter().map(|x| inst.v.apply(x)).collect();
    let trop = tilde_v(&inst.v, &inst.f);
    let member = corner_locus_member(&trop, &xi)?;
    Ok(KapranovReport { xi, member })
}

/// Checks a batch in instance order; parallel when the `parallel` feature
/// is on.
pub fn run_kapranov_suite(
    instances: &[KapranovInstance],
) -> Vec<Result<KapranovReport, KapranovError>> {
    exec::map_collect(instances, check_kapranov)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("variable count must be 1 or 2, got {0}")]
    VarCount(usize),
    #[error("degree must lie in 1..=6, got {0}")]
    Degree(u32),
    #[error("instance count {0} exceeds the generator bound of {MAX_INSTANCES}")]
    Count(usize),
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
}

fn check_generator_bounds(count: usize, n: usize, degree: u32) -> Result<(), GenerateError> {
    if !(1..=2).contains(&n) {
        return Err(GenerateError::VarCount(n));
    }
    if !(1..=6).contains(&degree) {
        return Err(GenerateError::Degree(degree));
    }
    if count > MAX_INSTANCES {
        return Err(GenerateError::Count(count));
    }
    Ok(())
}

/// A nonzero rational of the form `±(u/w)·p^e` with small `u`, `w`, `e`:
/// enough spread for valuations to collide and to separate.
fn small_scaled(rng: &mut ChaCha8Rng, p: u64) -> Rational {
    let u = rng.gen_range(1..=9i64);
    let w = rng.gen_range(1..=3i64);
    let e = rng.gen_range(-2..=2i32);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new((sign * u).into(), w.into()) * pow_big(p as i64, e)
}

/// A product of `d` linear factors together with a designated rational
/// root, expanded exactly. For two variables each factor is a linear form
/// vanishing at its own sample point.
fn root_product(
    rng: &mut ChaCha8Rng,
    p: u64,
    n: usize,
    degree: u32,
) -> (SparsePoly<Rational>, Vec<Rational>) {
    let d = rng.gen_range(1..=degree);
    let mut f = SparsePoly::constant(n, small_scaled(rng, p));
    let mut designated: Option<Vec<Rational>> = None;
    for k in 0..d {
        let factor;
        let point;
        if n == 1 {
            let r = small_scaled(rng, p);
            factor = SparsePoly::from_terms(1, [(vec![1], int(1)), (vec![0], -r.clone())]);
            point = vec![r];
        } else {
            let r1 = small_scaled(rng, p);
            let r2 = small_scaled(rng, p);
            let mut alpha = int(rng.gen_range(-4..=4));
            let mut beta = int(rng.gen_range(-4..=4));
            if alpha == int(0) && beta == int(0) {
                alpha = int(1);
            }
            if k == 0 && alpha == int(0) {
                beta = int(1);
            }
            let gamma = -(&alpha * &r1 + &beta * &r2);
            factor = SparsePoly::from_terms(
                2,
                [
                    (vec![1, 0], alpha),
                    (vec![0, 1], beta),
                    (vec![0, 0], gamma),
                ],
            );
            point = vec![r1, r2];
        }
        f = f.times(&factor);
        if k == 0 {
            designated = Some(point);
        }
    }
    (f, designated.expect("degree is at least one"))
}

/// A random sparse polynomial: every monomial of total degree up to the
/// bound appears with probability 1/2, with at least the constant term.
fn random_sparse(rng: &mut ChaCha8Rng, p: u64, n: usize, degree: u32) -> SparsePoly<Rational> {
    let mut f = SparsePoly::zero(n);
    if n == 1 {
        for i in 0..=degree {
            if rng.gen_bool(0.5) {
                f.add_term(vec![i], small_scaled(rng, p));
            }
        }
    } else {
        for i in 0..=degree {
            for j in 0..=(degree - i) {
                if rng.gen_bool(0.5) {
                    f.add_term(vec![i, j], small_scaled(rng, p));
                }
            }
        }
    }
    if f.is_zero() {
        f.add_term(vec![0; n], small_scaled(rng, p));
    }
    f
}

/// Deterministic batch of corner-locus instances: products of linear
/// factors with roots built from powers of `p` and small integers,
/// expanded exactly, paired with the `p`-adic valuation.
pub fn generate_root_instances(
    seed: u64,
    count: usize,
    p: u64,
    n: usize,
    degree: u32,
) -> Result<Vec<KapranovInstance>, GenerateError> {
    check_generator_bounds(count, n, degree)?;
    let v = padic_valuation(p)?;
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (f, root) = root_product(&mut rng, p, n, degree);
        out.push(KapranovInstance {
            f,
            root,
            v: v.clone(),
        });
    }
    Ok(out)
}

/// Deterministic batch of surpassing instances against the tangible lift
/// of the `p`-adic valuation. One instance in four designates a genuine
/// root (exercising the zero right-hand side and the tie invariant); the
/// rest use a random point, almost surely not a root. The variable count
/// alternates pseudo-randomly between one and two.
pub fn generate_theorem51_instances(
    seed: u64,
    count: usize,
    p: u64,
    degree: u32,
) -> Result<Vec<Theorem51Instance>, GenerateError> {
    check_generator_bounds(count, 1, degree)?;
    let v = padic_valuation(p)?;
    let phi = tangible_lift(&v);
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(1..=2usize);
        let (f, a) = if rng.gen_ratio(1, 4) {
            root_product(&mut rng, p, n, degree)
        } else {
            let f = random_sparse(&mut rng, p, n, degree);
            let a = (0..n).map(|_| small_scaled(&mut rng, p)).collect();
            (f, a)
        };
        out.push(Theorem51Instance {
            f,
            a,
            phi: phi.clone(),
        });
    }
    Ok(out)
}

/// One side-by-side theorem evaluation used by the monotonicity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremEvaluation {
    pub lhs: SupertropicalElem,
    pub rhs: SupertropicalElem,
    pub gs_holds: bool,
}

/// A transported value compared against the dominated side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportCheck {
    pub phi_value: SupertropicalElem,
    pub psi_value: SupertropicalElem,
    /// `α` applied to the `φ`-side value; `None` when a table rule lacks
    /// the entry.
    pub transported: Option<SupertropicalElem>,
}

impl TransportCheck {
    pub fn ok(&self) -> bool {
        self.transported.as_ref() == Some(&self.psi_value)
    }
}

/// Outcome of a monotonicity check. Dominance failures and theorem
/// failures are reported in separate fields so a corrupted transmission
/// does not mask the theorem verdicts.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub dominance: DominanceReport,
    pub phi: TheoremEvaluation,
    pub psi: TheoremEvaluation,
    pub lhs_transport: TransportCheck,
    pub rhs_transport: TransportCheck,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.dominance.passed()
            && self.phi.gs_holds
            && self.psi.gs_holds
            && self.lhs_transport.ok()
            && self.rhs_transport.ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonotonicityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Fragment(#[from] FragmentOverflow),
}

/// Verifies that the surpassing statement transports along a dominance
/// claim `ψ = α∘φ`: the dominance laws hold on the fragment generated by
/// the instance, both sides satisfy the theorem, and `α` carries the
/// `φ`-side values onto the `ψ`-side values. No strongness gate is
/// applied: corrupted inputs should surface as failed checks here, not as
/// rejected instances.
pub fn check_dominance_monotonicity(
    f: &SparsePoly<Rational>,
    a: &[Rational],
    phi: &Supervaluation,
    psi: &Supervaluation,
    alpha: &Transmission,
) -> Result<MonotonicityReport, MonotonicityError> {
    if f.arity() != a.len() {
        return Err(PolyError::ArityMismatch {
            expected: f.arity(),
            got: a.len(),
        }
        .into());
    }
    let mut samples: Vec<Rational> = Vec::new();
    for (_, c) in f.terms() {
        dedup_push(&mut samples, c.clone());
    }
    for x in a {
        dedup_push(&mut samples, x.clone());
    }
    let witness = DominanceWitness {
        phi: phi.clone(),
        psi: psi.clone(),
        alpha: alpha.clone(),
        samples,
    };
    let dominance = verify_dominance(&witness, DEFAULT_FRAGMENT_CAP)?;

    let side = |sv: &Supervaluation| -> Result<TheoremEvaluation, MonotonicityError> {
        let core = evaluate_sides(f, a, sv)?;
        let gs_holds = gs_geq(&core.lhs, &core.rhs);
        Ok(TheoremEvaluation {
            lhs: core.lhs,
            rhs: core.rhs,
            gs_holds,
        })
    };
    let phi_eval = side(phi)?;
    let psi_eval = side(psi)?;

    let lhs_transport = TransportCheck {
        phi_value: phi_eval.lhs.clone(),
        psi_value: psi_eval.lhs.clone(),
        transported: alpha.apply(&phi_eval.lhs),
    };
    let rhs_transport = TransportCheck {
        phi_value: phi_eval.rhs.clone(),
        psi_value: psi_eval.rhs.clone(),
        transported: alpha.apply(&phi_eval.rhs),
    };

    Ok(MonotonicityReport {
        dominance,
        phi: phi_eval,
        psi: psi_eval,
        lhs_transport,
        rhs_transport,
    })
}
