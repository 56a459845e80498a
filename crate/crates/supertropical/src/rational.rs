//! Exact rational scalars.
//!
//! One rational type serves two roles: values of the ordered abelian group
//! `(ℚ, +)` underlying the bipotent and supertropical semifields, and elements
//! of the source semirings `ℚ` / `ℚ≥0` that valuations are defined on.
//! `num_rational::BigRational` keeps every value in canonical form
//! (fully reduced, positive denominator), so equality is structural.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for plot coordinates only; exact arithmetic never
/// passes through this.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

/// Multiplicity of the prime `p` in the nonzero integer `n` (sign ignored).
pub fn int_multiplicity(p: u64, n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}
