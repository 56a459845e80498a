//! A laboratory for finite semiring candidates given by Cayley tables.
//!
//! Users supply a finite magma table (addition and multiplication as
//! row-major label matrices plus distinguished zero and one); the auditors
//! check the commutative-semiring laws and the supertropical axioms and
//! report every failure with a concrete witness, checkable by table lookup.
//!
//! The supertropical axioms over a finite candidate `U`:
//!
//! * ST1: `e := 1+1` is idempotent (`e·e = e`, `e+e = e`). Given the
//!   semiring laws this makes `eU` an ideal: `u·(ex) = e·(ux)` and
//!   `ex + ey = e(x+y)` land in `eU` by associativity and distributivity,
//!   so ideal-ness needs no separate check.
//! * ST2: the ghost ideal `eU` is bipotent (`a+b ∈ {a,b}` inside it), which
//!   makes `a ≤ b ⟺ a+b = b` a total order on `eU`.
//! * ST3: `ex < ey` forces `x+y = y`.
//! * ST4: `ex = ey` forces `x+y = ex`.
//! * ST5: tangibles (`U ∖ eU`) and ghosts (`eU ∖ {0}`) are each closed
//!   under multiplication.
//!
//! ST5 is reported as its own line item: structures violating only ST5 are
//! identified as such rather than rejected wholesale.
//!
//! The homomorphism finder enumerates every map between two audited tables
//! that fixes zero and one and preserves both operations. The search is
//! exhaustive by design; a size bound, a search-space cap, and a cooperative
//! cancellation flag keep it at desk scale.

use crate::semifield::SupertropicalElem;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table JSON: {0}")]
    Json(String),
    #[error("table has no elements")]
    Empty,
    #[error("duplicate element name '{0}'")]
    DuplicateName(String),
    #[error("unknown label '{label}' in {place}")]
    UnknownLabel { label: String, place: String },
    #[error("{matrix} matrix must be {n}x{n}, found row of length {got}")]
    Shape {
        matrix: &'static str,
        n: usize,
        got: usize,
    },
    #[error("zero and one must be distinct unless the table has one element")]
    ZeroOneCollision,
    #[error("the semifield unit t0 must be among the elements")]
    MissingUnit,
    #[error("set is not closed: {x} {op} {y} = {result} is not in the set")]
    NotClosed {
        x: String,
        op: char,
        y: String,
        result: String,
    },
}

/// A finite magma-pair table: candidate carrier for a commutative semiring.
/// Entries are element indices; names are kept for rendering and JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiringTable {
    names: Vec<String>,
    zero: usize,
    one: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

#[derive(serde::Deserialize)]
struct RawTable {
    names: Vec<String>,
    zero: String,
    one: String,
    add: Vec<Vec<String>>,
    mul: Vec<Vec<String>>,
}

impl FiniteSemiringTable {
    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let raw: RawTable =
            serde_json::from_str(text).map_err(|e| TableError::Json(e.to_string()))?;
        Self::from_labels(&raw.names, &raw.zero, &raw.one, &raw.add, &raw.mul)
    }

    pub fn from_labels(
        names: &[String],
        zero: &str,
        one: &str,
        add: &[Vec<String>],
        mul: &[Vec<String>],
    ) -> Result<Self, TableError> {
        if names.is_empty() {
            return Err(TableError::Empty);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name, i).is_some() {
                return Err(TableError::DuplicateName(name.clone()));
            }
        }
        let resolve = |label: &str, place: String| {
            index.get(label).copied().ok_or(TableError::UnknownLabel {
                label: label.to_string(),
                place,
            })
        };
        let n = names.len();
        let zero = resolve(zero, "the zero field".into())?;
        let one = resolve(one, "the one field".into())?;
        if zero == one && n > 1 {
            return Err(TableError::ZeroOneCollision);
        }
        let read_matrix = |matrix: &'static str,
                           rows: &[Vec<String>]|
         -> Result<Vec<Vec<usize>>, TableError> {
            if rows.len() != n {
                return Err(TableError::Shape {
                    matrix,
                    n,
                    got: rows.len(),
                });
            }
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != n {
                        return Err(TableError::Shape {
                            matrix,
                            n,
                            got: row.len(),
                        });
                    }
                    row.iter()
                        .enumerate()
                        .map(|(j, label)| {
                            resolve(label, format!("{matrix}[{i}][{j}]"))
                        })
                        .collect()
                })
                .collect()
        };
        Ok(FiniteSemiringTable {
            names: names.to_vec(),
            zero,
            one,
            add: read_matrix("add", add)?,
            mul: read_matrix("mul", mul)?,
        })
    }

    /// Builds the table of a finite subset of `U(ℚ)` from the semifield
    /// operations themselves. The subset must contain zero and the unit and
    /// be closed under both operations.
    pub fn from_supertropical_elems(elems: &[SupertropicalElem]) -> Result<Self, TableError> {
        let mut set: Vec<SupertropicalElem> = Vec::new();
        for x in elems {
            if !set.contains(x) {
                set.push(x.clone());
            }
        }
        if set.is_empty() {
            return Err(TableError::Empty);
        }
        if !set.contains(&SupertropicalElem::Zero) {
            return Err(TableError::UnknownLabel {
                label: "0".into(),
                place: "the element set (zero is required)".into(),
            });
        }
        let one = SupertropicalElem::one();
        if !set.contains(&one) {
            return Err(TableError::MissingUnit);
        }
        let names: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        let locate = |x: &SupertropicalElem, a: usize, op: char, b: usize| {
            set.iter().position(|y| y == x).ok_or(TableError::NotClosed {
                x: names[a].clone(),
                op,
                y: names[b].clone(),
                result: x.to_string(),
            })
        };
        let n = set.len();
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = locate(&(&set[i] + &set[j]), i, '+', j)?;
                mul[i][j] = locate(&(&set[i] * &set[j]), i, '*', j)?;
            }
        }
        Ok(FiniteSemiringTable {
            zero: set
                .iter()
                .position(|x| x.is_zero())
                .expect("zero present"),
            one: set.iter().position(|x| *x == one).expect("unit present"),
            names,
            add,
            mul,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn zero_idx(&self) -> usize {
        self.zero
    }

    pub fn one_idx(&self) -> usize {
        self.one
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddUnit,
    MulAssociative,
    MulCommutative,
    MulUnit,
    ZeroAbsorbing,
    Distributive,
    St1EIdempotent,
    St2GhostsBipotent,
    St3DominantSummand,
    St4EqualCollapse,
    St5TagsMultiplicative,
}

impl Law {
    pub fn slug(&self) -> &'static str {
        match self {
            Law::AddAssociative => "add-associative",
            Law::AddCommutative => "add-commutative",
            Law::AddUnit => "add-unit",
            Law::MulAssociative => "mul-associative",
            Law::MulCommutative => "mul-commutative",
            Law::MulUnit => "mul-unit",
            Law::ZeroAbsorbing => "zero-absorbing",
            Law::Distributive => "distributive",
            Law::St1EIdempotent => "ST1",
            Law::St2GhostsBipotent => "ST2",
            Law::St3DominantSummand => "ST3",
            Law::St4EqualCollapse => "ST4",
            Law::St5TagsMultiplicative => "ST5",
        }
    }

    pub fn is_supertropical_axiom(&self) -> bool {
        matches!(
            self,
            Law::St1EIdempotent
                | Law::St2GhostsBipotent
                | Law::St3DominantSummand
                | Law::St4EqualCollapse
                | Law::St5TagsMultiplicative
        )
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.slug())
    }
}

/// One audited law: `witness` is `None` on pass, or the element indices of a
/// counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: Law,
    pub witness: Option<Vec<usize>>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<LawCheck>,
    /// Index of `e = 1+1`; present when the supertropical audit ran.
    pub e: Option<usize>,
    /// Partition extracted when the semiring laws and ST1–ST4 hold.
    pub tangibles: Option<Vec<usize>>,
    pub ghosts: Option<Vec<usize>>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn check(&self, law: Law) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn semiring_ok(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.law.is_supertropical_axiom())
            .all(LawCheck::passed)
    }

    /// Whether the table is a supertropical semiring in the full sense:
    /// commutative semiring plus ST1–ST5.
    pub fn is_supertropical(&self) -> bool {
        self.passed() && self.check(Law::St1EIdempotent).is_some()
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn scan1(n: usize, ok: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&a| !ok(a)).map(|a| vec![a])
}

fn scan2(n: usize, ok: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            if !ok(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn scan3(n: usize, ok: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !ok(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Audits the commutative-semiring laws, reporting the first counterexample
/// per law.
pub fn audit_semiring(t: &FiniteSemiringTable) -> AuditReport {
    let n = t.len();
    let checks = vec![
        LawCheck {
            law: Law::AddAssociative,
            witness: scan3(n, |a, b, c| t.add(t.add(a, b), c) == t.add(a, t.add(b, c))),
        },
        LawCheck {
            law: Law::AddCommutative,
            witness: scan2(n, |a, b| t.add(a, b) == t.add(b, a)),
        },
        LawCheck {
            law: Law::AddUnit,
            witness: scan1(n, |a| t.add(a, t.zero_idx()) == a),
        },
        LawCheck {
            law: Law::MulAssociative,
            witness: scan3(n, |a, b, c| t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))),
        },
        LawCheck {
            law: Law::MulCommutative,
            witness: scan2(n, |a, b| t.mul(a, b) == t.mul(b, a)),
        },
        LawCheck {
            law: Law::MulUnit,
            witness: scan1(n, |a| t.mul(a, t.one_idx()) == a),
        },
        LawCheck {
            law: Law::ZeroAbsorbing,
            witness: scan1(n, |a| t.mul(a, t.zero_idx()) == t.zero_idx()),
        },
        LawCheck {
            law: Law::Distributive,
            witness: scan3(n, |a, b, c| {
                t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
            }),
        },
    ];
    AuditReport {
        checks,
        e: None,
        tangibles: None,
        ghosts: None,
    }
}

/// Audits the supertropical axioms on top of the semiring laws. If the
/// semiring audit fails, its report is returned unchanged: the ST axioms
/// read `e`, `eU`, and the `eU`-order off structure that only exists in a
/// semiring.
pub fn audit_supertropical(t: &FiniteSemiringTable) -> AuditReport {
    let mut report = audit_semiring(t);
    if !report.passed() {
        return report;
    }
    let n = t.len();
    let e = t.add(t.one_idx(), t.one_idx());
    report.e = Some(e);

    // nu(x) = ex; eU is its image.
    let nu: Vec<usize> = (0..n).map(|x| t.mul(e, x)).collect();
    let mut ghost_ideal: Vec<usize> = Vec::new();
    for &g in &nu {
        if !ghost_ideal.contains(&g) {
            ghost_ideal.push(g);
        }
    }
    ghost_ideal.sort_unstable();
    let in_ideal = |x: usize| ghost_ideal.binary_search(&x).is_ok();

    // a < b inside eU means a+b = b and a != b; bipotency (ST2) makes this
    // a total order, but the formula is evaluated regardless so ST3/ST4
    // still produce witnesses on ST2-violating tables.
    let e_less = |a: usize, b: usize| a != b && t.add(a, b) == b;

    let st1 = LawCheck {
        law: Law::St1EIdempotent,
        witness: (t.mul(e, e) != e || t.add(e, e) != e).then(|| vec![e]),
    };
    let st2 = LawCheck {
        law: Law::St2GhostsBipotent,
        witness: {
            let mut found = None;
            'outer: for &a in &ghost_ideal {
                for &b in &ghost_ideal {
                    let s = t.add(a, b);
                    if s != a && s != b {
                        found = Some(vec![a, b]);
                        break 'outer;
                    }
                }
            }
            found
        },
    };
    let st3 = LawCheck {
        law: Law::St3DominantSummand,
        witness: scan2(n, |x, y| !e_less(nu[x], nu[y]) || t.add(x, y) == y),
    };
    let st4 = LawCheck {
        law: Law::St4EqualCollapse,
        witness: scan2(n, |x, y| nu[x] != nu[y] || t.add(x, y) == nu[x]),
    };

    let tangibles: Vec<usize> = (0..n).filter(|&x| !in_ideal(x)).collect();
    let ghosts: Vec<usize> = ghost_ideal
        .iter()
        .copied()
        .filter(|&g| g != t.zero_idx())
        .collect();
    let tag_closed = |members: &[usize]| -> Option<Vec<usize>> {
        for &a in members {
            for &b in members {
                if !members.contains(&t.mul(a, b)) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    };
    let st5 = LawCheck {
        law: Law::St5TagsMultiplicative,
        witness: tag_closed(&tangibles).or_else(|| tag_closed(&ghosts)),
    };

    let core_pass = st1.passed() && st2.passed() && st3.passed() && st4.passed();
    report.checks.extend([st1, st2, st3, st4, st5]);
    if core_pass {
        report.tangibles = Some(tangibles);
        report.ghosts = Some(ghosts);
    }
    report
}

pub const DEFAULT_SIZE_BOUND: usize = 12;
pub const DEFAULT_SPACE_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub size_bound: Option<usize>,
    pub space_cap: Option<u128>,
    /// Set to true from another thread to stop the enumeration.
    pub cancel: Option<Arc<AtomicBool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("source table has {n} elements, over the search bound of {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("search space of {space} candidate maps exceeds the cap of {cap}")]
    SpaceCap { space: u128, cap: u128 },
    #[error("{which} table is not a commutative semiring (law '{law}' fails)")]
    NotSemiring { which: &'static str, law: String },
    #[error("homomorphism search cancelled")]
    Cancelled,
}

/// Exhaustively enumerates the semiring homomorphisms `src → dst`: maps
/// fixing zero and one and preserving both tables. Results are index maps in
/// lexicographic order of their free assignments.
pub fn find_homomorphisms(
    src: &FiniteSemiringTable,
    dst: &FiniteSemiringTable,
) -> Result<Vec<Vec<usize>>, SearchError> {
    find_homomorphisms_with(src, dst, &SearchOptions::default())
}

pub fn find_homomorphisms_with(
    src: &FiniteSemiringTable,
    dst: &FiniteSemiringTable,
    options: &SearchOptions,
) -> Result<Vec<Vec<usize>>, SearchError> {
    let bound = options.size_bound.unwrap_or(DEFAULT_SIZE_BOUND);
    let cap = options.space_cap.unwrap_or(DEFAULT_SPACE_CAP);
    let n = src.len();
    let m = dst.len();
    if n > bound {
        return Err(SearchError::SizeBound { n, bound });
    }
    let free: Vec<usize> = (0..n)
        .filter(|&i| i != src.zero_idx() && i != src.one_idx())
        .collect();
    let space = (m as u128).checked_pow(free.len() as u32);
    if !space.is_some_and(|s| s <= cap) {
        return Err(SearchError::SpaceCap {
            space: space.unwrap_or(u128::MAX),
            cap,
        });
    }
    for (which, table) in [("source", src), ("target", dst)] {
        let report = audit_semiring(table);
        if !report.passed() {
            let law = report.failures().next().expect("failed").law.to_string();
            return Err(SearchError::NotSemiring { which, law });
        }
    }
    if src.zero_idx() == src.one_idx() && dst.zero_idx() != dst.one_idx() {
        return Ok(Vec::new());
    }

    let mut map = vec![0usize; n];
    map[src.zero_idx()] = dst.zero_idx();
    map[src.one_idx()] = dst.one_idx();
    let preserves = |map: &[usize]| {
        for i in 0..n {
            for j in 0..n {
                if map[src.add(i, j)] != dst.add(map[i], map[j])
                    || map[src.mul(i, j)] != dst.mul(map[i], map[j])
                {
                    return false;
                }
            }
        }
        true
    };

    let mut found = Vec::new();
    let mut counters = vec![0usize; free.len()];
    loop {
        if let Some(flag) = &options.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(SearchError::Cancelled);
            }
        }
        for (slot, &value) in free.iter().zip(&counters) {
            map[*slot] = value;
        }
        if preserves(&map) {
            found.push(map.clone());
        }
        // Odometer over the free slots, least significant last.
        let mut k = free.len();
        loop {
            if k == 0 {
                return Ok(found);
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < m {
                break;
            }
            counters[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// U over the trivial group: `{0, 1, e}` with `1+1 = e`.
    pub(crate) const THREE_ELEMENT: &str = r#"{
        "names": ["0", "1", "e"],
        "zero": "0",
        "one": "1",
        "add": [["0","1","e"],["1","e","e"],["e","e","e"]],
        "mul": [["0","0","0"],["0","1","e"],["0","e","e"]]
    }"#;

    /// The boolean semifield: bipotent, so everything nonzero is ghost.
    pub(crate) const BOOLEAN: &str = r#"{
        "names": ["0", "1"],
        "zero": "0",
        "one": "1",
        "add": [["0","1"],["1","1"]],
        "mul": [["0","0"],["0","1"]]
    }"#;

    /// Chain join-semilattice addition, but `b·b = 1` breaks distributivity
    /// at `(b, 1, b)` while every other semiring law holds.
    pub(crate) const BROKEN_DISTRIBUTIVITY: &str = r#"{
        "names": ["0", "1", "b"],
        "zero": "0",
        "one": "1",
        "add": [["0","1","b"],["1","1","b"],["b","b","b"]],
        "mul": [["0","0","0"],["0","1","b"],["0","b","1"]]
    }"#;

    fn three() -> FiniteSemiringTable {
        FiniteSemiringTable::from_json(THREE_ELEMENT).unwrap()
    }

    fn boolean() -> FiniteSemiringTable {
        FiniteSemiringTable::from_json(BOOLEAN).unwrap()
    }

    #[test]
    fn three_element_table_is_supertropical() {
        let report = audit_supertropical(&three());
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.is_supertropical());
        assert_eq!(report.e, Some(2));
        assert_eq!(report.tangibles, Some(vec![1]));
        assert_eq!(report.ghosts, Some(vec![2]));
    }

    #[test]
    fn boolean_semifield_is_supertropical_with_no_tangibles() {
        let report = audit_supertropical(&boolean());
        assert!(report.is_supertropical());
        assert_eq!(report.e, Some(1));
        assert_eq!(report.tangibles, Some(vec![]));
        assert_eq!(report.ghosts, Some(vec![1]));
    }

    #[test]
    fn distributivity_failure_carries_witness() {
        let t = FiniteSemiringTable::from_json(BROKEN_DISTRIBUTIVITY).unwrap();
        let report = audit_semiring(&t);
        assert!(!report.passed());
        let failures: Vec<&LawCheck> = report.failures().collect();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].law, Law::Distributive);
        let w = failures[0].witness.as_ref().unwrap();
        let (a, b, c) = (w[0], w[1], w[2]);
        assert_ne!(
            t.mul(a, t.add(b, c)),
            t.add(t.mul(a, b), t.mul(a, c)),
            "witness must check out by table lookup"
        );
        // Supertropical audit refuses to go further on a non-semiring.
        let st = audit_supertropical(&t);
        assert_eq!(st.e, None);
        assert!(st.check(Law::St1EIdempotent).is_none());
    }

    #[test]
    fn ghost_zero_of_nonzero_breaks_st4() {
        // The field with two elements: a genuine commutative semiring where
        // e = 1+1 = 0, so the nonzero element x = 1 has ex = 0. The pair
        // (0, 1) then has equal e-values but 0 + 1 = 1 != e*0 = 0: ST4 must
        // fail, consistent with ghosts of nonzero elements being nonzero in
        // any supertropical structure.
        let z2 = r#"{
            "names": ["0", "1"],
            "zero": "0",
            "one": "1",
            "add": [["0","1"],["1","0"]],
            "mul": [["0","0"],["0","1"]]
        }"#;
        let t = FiniteSemiringTable::from_json(z2).unwrap();
        let report = audit_supertropical(&t);
        assert!(report.semiring_ok());
        let st4 = report.check(Law::St4EqualCollapse).unwrap();
        assert!(!st4.passed());
        let w = st4.witness.as_ref().unwrap();
        assert!(w.contains(&1), "witness {w:?} must involve the nonzero element");
        assert!(!report.is_supertropical());
        assert_eq!(report.tangibles, None);
    }

    #[test]
    fn table_from_semifield_ops_matches_hand_table() {
        let elems = [
            SupertropicalElem::Zero,
            SupertropicalElem::one(),
            SupertropicalElem::e(),
        ];
        let t = FiniteSemiringTable::from_supertropical_elems(&elems).unwrap();
        assert_eq!(t.label(0), "0");
        assert_eq!(t.label(1), "t0");
        assert_eq!(t.label(2), "g0");
        let report = audit_supertropical(&t);
        assert!(report.is_supertropical());
        assert_eq!(report.tangibles, Some(vec![1]));
        assert_eq!(report.ghosts, Some(vec![2]));
        // Same structure as the hand-written JSON fixture.
        let hand = three();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.add(i, j), hand.add(i, j));
                assert_eq!(t.mul(i, j), hand.mul(i, j));
            }
        }
    }

    #[test]
    fn non_closed_set_is_rejected() {
        let elems = [
            SupertropicalElem::Zero,
            SupertropicalElem::one(),
            SupertropicalElem::tangible_int(1),
        ];
        let err = FiniteSemiringTable::from_supertropical_elems(&elems).unwrap_err();
        assert!(matches!(err, TableError::NotClosed { .. }), "{err}");
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            FiniteSemiringTable::from_json("{"),
            Err(TableError::Json(_))
        ));
        let bad_label = THREE_ELEMENT.replacen("\"e\"", "\"q\"", 1);
        assert!(matches!(
            FiniteSemiringTable::from_json(&bad_label),
            Err(TableError::DuplicateName(_)) | Err(TableError::UnknownLabel { .. })
        ));
        let names = vec!["0".to_string(), "0".to_string()];
        let rows = vec![
            vec!["0".to_string(), "0".to_string()],
            vec!["0".to_string(), "0".to_string()],
        ];
        assert_eq!(
            FiniteSemiringTable::from_labels(&names, "0", "0", &rows, &rows).unwrap_err(),
            TableError::DuplicateName("0".into())
        );
    }

    #[test]
    fn homomorphisms_three_to_three_is_identity_only() {
        let t = three();
        let homs = find_homomorphisms(&t, &t).unwrap();
        assert_eq!(homs, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn homomorphisms_three_to_boolean_collapse_e() {
        let homs = find_homomorphisms(&three(), &boolean()).unwrap();
        assert_eq!(homs, vec![vec![0, 1, 1]]);
    }

    #[test]
    fn homomorphisms_boolean_to_three_is_empty() {
        // 1+1 = 1 in the source but t(1)+t(1) = e in the target.
        let homs = find_homomorphisms(&boolean(), &three()).unwrap();
        assert!(homs.is_empty());
    }

    #[test]
    fn size_bound_is_enforced() {
        let n = DEFAULT_SIZE_BOUND + 1;
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let row: Vec<String> = vec!["0".to_string(); n];
        let rows: Vec<Vec<String>> = vec![row; n];
        let t = FiniteSemiringTable::from_labels(&names, "0", "1", &rows, &rows).unwrap();
        let err = find_homomorphisms(&t, &t).unwrap_err();
        assert_eq!(
            err,
            SearchError::SizeBound {
                n,
                bound: DEFAULT_SIZE_BOUND
            }
        );
    }

    #[test]
    fn space_cap_is_enforced() {
        let t = three();
        let options = SearchOptions {
            space_cap: Some(2),
            ..Default::default()
        };
        let err = find_homomorphisms_with(&t, &t, &options).unwrap_err();
        assert_eq!(err, SearchError::SpaceCap { space: 3, cap: 2 });
    }

    #[test]
    fn cancellation_is_cooperative() {
        let flag = Arc::new(AtomicBool::new(true));
        let options = SearchOptions {
            cancel: Some(flag),
            ..Default::default()
        };
        let err = find_homomorphisms_with(&three(), &three(), &options).unwrap_err();
        assert_eq!(err, SearchError::Cancelled);
    }

    #[test]
    fn non_semiring_inputs_are_refused() {
        let broken = FiniteSemiringTable::from_json(BROKEN_DISTRIBUTIVITY).unwrap();
        let err = find_homomorphisms(&broken, &three()).unwrap_err();
        assert!(matches!(err, SearchError::NotSemiring { which: "source", .. }));
    }
}
