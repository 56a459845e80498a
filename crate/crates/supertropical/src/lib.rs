//! Exact arithmetic for supertropical algebra.
//!
//! The crate builds, from the ground up:
//!
//! * the bipotent (max-plus) semifield over the ordered abelian group `(ℚ, +)`
//!   ([`bipotent::BipotentElem`]),
//! * the standard supertropical semifield over the same value group, with
//!   tangible and ghost elements and the ghost-surpassing partial order
//!   ([`semifield::SupertropicalElem`]),
//! * valuations `ℚ → M` (p-adic and trivial) and supervaluations `ℚ → U`
//!   covering them ([`valuation`], [`supervaluation`]),
//! * sparse multivariate polynomials over `ℚ`, `M`, and `U`, coefficientwise
//!   tropicalization, and corner-locus membership ([`poly`]),
//! * a finite-table laboratory that audits user-supplied Cayley tables for the
//!   semiring and supertropical axioms and enumerates homomorphisms
//!   ([`lab`]),
//! * batch verifiers for the ghost-surpassing evaluation identity and the
//!   classical corner-locus containment it implies ([`kapranov`]).
//!
//! All arithmetic is exact (arbitrary-precision rationals); every check is a
//! zero-tolerance equality. Batch suites run data-parallel when the `parallel`
//! feature (default) is enabled and fall back to sequential iteration
//! otherwise; results are deterministic and identically ordered either way.

#![forbid(unsafe_code)]

pub mod bipotent;
pub mod exec;
pub mod kapranov;
pub mod lab;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod semifield;
pub mod semiring;
pub mod supervaluation;
pub mod valuation;

pub use bipotent::BipotentElem;
pub use rational::Rational;
pub use semifield::{GhostValue, SupertropicalElem};
pub use semiring::Semiring;
