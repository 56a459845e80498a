//! Sparse multivariate polynomials over a commutative semiring, with the
//! evaluation homomorphisms, coefficientwise tilde-maps, and tropical corner
//! loci.
//!
//! A polynomial `f = Σ cᵢ λ^i` is stored as a finite map from exponent
//! vectors to nonzero coefficients. The same container serves three
//! coefficient kinds: rationals, bipotent values, and supertropical values.
//! Evaluation at a point folds the per-term values with semiring addition;
//! over the bipotent semifield this is the tropical `max` of affine forms,
//! and the corner locus collects the points where that maximum is attained
//! by at least two terms.
//!
//! Conventions fixed here: `Zero^0` is the multiplicative unit, so constant
//! terms survive at points with zero coordinates; argmax ties at overall
//! value zero count like any other tie.

use crate::bipotent::BipotentElem;
use crate::exec;
use crate::rational::Rational;
use crate::semifield::SupertropicalElem;
use crate::semiring::Semiring;
use crate::supervaluation::Supervaluation;
use crate::valuation::Valuation;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("point has {got} coordinates but the polynomial has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("corner locus membership is undefined for the zero polynomial")]
    EmptyPolynomial,
    #[error("grid has {got} axes but the polynomial has {expected} variables")]
    GridArityMismatch { expected: usize, got: usize },
}

/// Polynomial in `n` variables with coefficients in `C`, sparse over the
/// exponent vectors. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<C> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Semiring> SparsePoly<C> {
    pub fn zero(n: usize) -> Self {
        SparsePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = SparsePoly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// Merges `c` into the coefficient at `exp` with semiring addition.
    pub fn add_term(&mut self, exp: Vec<u32>, c: C) {
        assert_eq!(exp.len(), self.n, "exponent vector arity");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let merged = old.add(&c);
                if !merged.is_zero() {
                    self.terms.insert(exp, merged);
                }
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(n: usize, terms: I) -> Self {
        let mut p = SparsePoly::zero(n);
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    /// Univariate convenience: coefficients listed as (degree, coefficient).
    pub fn univariate<I: IntoIterator<Item = (u32, C)>>(coeffs: I) -> Self {
        SparsePoly::from_terms(1, coeffs.into_iter().map(|(d, c)| (vec![d], c)))
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Option<&C> {
        self.terms.get(exp)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity");
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity");
        let mut out = SparsePoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(i, j)| i + j).collect();
                out.add_term(exp, ca.mul(cb));
            }
        }
        out
    }

    /// Applies `map` to every coefficient, dropping terms that land on zero.
    pub fn map_coeffs<D: Semiring>(&self, map: impl Fn(&C) -> D) -> SparsePoly<D> {
        SparsePoly::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), map(c))))
    }

    fn check_arity(&self, point: &[C]) -> Result<(), PolyError> {
        if point.len() != self.n {
            return Err(PolyError::ArityMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        Ok(())
    }

    /// The value of the single term `c·a^e`; `Zero^0` is the unit, so factors
    /// with exponent 0 never contribute.
    fn term_value(exp: &[u32], c: &C, point: &[C]) -> C {
        let mut acc = c.clone();
        for (coord, &k) in point.iter().zip(exp) {
            if k > 0 {
                acc = acc.mul(&coord.pow(k));
            }
        }
        acc
    }

    /// Per-term values `cᵢ·a^i` at the point, keyed by exponent vector.
    pub fn term_values(&self, point: &[C]) -> Result<BTreeMap<Vec<u32>, C>, PolyError> {
        self.check_arity(point)?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), Self::term_value(e, c, point)))
            .collect())
    }

    /// The evaluation homomorphism `ε_a(Σ cᵢ λ^i) = Σ cᵢ a^i`.
    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        self.check_arity(point)?;
        let mut acc = C::zero();
        for (exp, c) in &self.terms {
            acc = acc.add(&Self::term_value(exp, c, point));
        }
        Ok(acc)
    }
}

/// Free function spelling of [`SparsePoly::eval`].
pub fn poly_eval<C: Semiring>(f: &SparsePoly<C>, point: &[C]) -> Result<C, PolyError> {
    f.eval(point)
}

/// Pushes a valuation through the coefficients: `ṽ(Σ cᵢ λ^i) = Σ v(cᵢ) λ^i`.
pub fn tilde_v(v: &Valuation, f: &SparsePoly<Rational>) -> SparsePoly<BipotentElem> {
    f.map_coeffs(|c| v.apply(c))
}

/// Pushes a supervaluation through the coefficients:
/// `φ̃(Σ cᵢ λ^i) = Σ φ(cᵢ) λ^i`.
pub fn tilde_map(phi: &Supervaluation, f: &SparsePoly<Rational>) -> SparsePoly<SupertropicalElem> {
    f.map_coeffs(|c| phi.apply(c))
}

/// Per-term tropical values `v(cᵢ)·ξ^i` of a bipotent polynomial at `ξ`.
pub fn tropical_term_values(
    g: &SparsePoly<BipotentElem>,
    xi: &[BipotentElem],
) -> Result<BTreeMap<Vec<u32>, BipotentElem>, PolyError> {
    g.term_values(xi)
}

/// Whether `ξ` lies in the corner locus of `g`: the maximum of the term
/// values is attained by at least two terms. Rejects the zero polynomial,
/// whose empty maximum has no argmax set.
pub fn corner_locus_member(
    g: &SparsePoly<BipotentElem>,
    xi: &[BipotentElem],
) -> Result<bool, PolyError> {
    if g.is_zero() {
        return Err(PolyError::EmptyPolynomial);
    }
    let values = g.term_values(xi)?;
    let max = values.values().max().expect("nonempty");
    Ok(values.values().filter(|v| *v == max).count() >= 2)
}

/// One axis of a rectangular sampling grid: the closed arithmetic
/// progression `start, start+step, …` capped at `stop`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAxis {
    pub name: String,
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
}

impl GridAxis {
    /// Checked constructor: needs `step > 0` and `start ≤ stop`.
    pub fn new(name: &str, start: Rational, stop: Rational, step: Rational) -> Option<GridAxis> {
        if step <= Rational::from_integer(0.into()) || start > stop {
            return None;
        }
        Some(GridAxis {
            name: name.to_string(),
            start,
            stop,
            step,
        })
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut cur = self.start.clone();
        while cur <= self.stop {
            out.push(cur.clone());
            cur += &self.step;
        }
        out
    }
}

/// Rectangular lattice of tropical points, one axis per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
}

impl GridSpec {
    /// All lattice points in row-major order: the first axis varies slowest.
    pub fn points(&self) -> Vec<Vec<BipotentElem>> {
        let axis_points: Vec<Vec<Rational>> = self.axes.iter().map(|a| a.points()).collect();
        let mut out = vec![Vec::new()];
        for axis in &axis_points {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for value in axis {
                    let mut point = prefix.clone();
                    point.push(BipotentElem::Value(value.clone()));
                    next.push(point);
                }
            }
            out = next;
        }
        out
    }
}

/// Grid points of `spec` lying in the corner locus of `g`, in row-major
/// order. Membership tests for distinct points are independent and run
/// data-parallel; the output order is fixed by the grid, not the schedule.
pub fn corner_locus_grid(
    g: &SparsePoly<BipotentElem>,
    spec: &GridSpec,
) -> Result<Vec<Vec<BipotentElem>>, PolyError> {
    if g.is_zero() {
        return Err(PolyError::EmptyPolynomial);
    }
    if spec.axes.len() != g.arity() {
        return Err(PolyError::GridArityMismatch {
            expected: g.arity(),
            got: spec.axes.len(),
        });
    }
    let points = spec.points();
    let flags = exec::map_collect(&points, |xi| {
        corner_locus_member(g, xi).expect("arity checked")
    });
    Ok(points
        .into_iter()
        .zip(flags)
        .filter_map(|(p, member)| member.then_some(p))
        .collect())
}

/// Display names for grid/CSV headers: `x`, `x,y`, `x,y,z` for up to three
/// variables, `x1..xn` beyond.
pub fn var_name(n: usize, index: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

impl<C: Semiring + fmt::Display> fmt::Display for SparsePoly<C> {
    /// Canonical text: terms in descending exponent order, coefficients
    /// whose rendering begins with `-` pulled through a binary minus, and
    /// unit coefficients omitted next to variables, so a rational
    /// polynomial re-parses to the identical value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = C::one();
        for (idx, (exp, c)) in self.terms.iter().rev().enumerate() {
            let constant = exp.iter().all(|&k| k == 0);
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if constant || (*c != one && !(negative && magnitude == one.to_string())) {
                parts.push(magnitude);
            }
            for (i, &k) in exp.iter().enumerate() {
                if k == 1 {
                    parts.push(var_name(self.n, i));
                } else if k > 1 {
                    parts.push(format!("{}^{}", var_name(self.n, i), k));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
