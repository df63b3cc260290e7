//! Finite groups given by their Cayley tables.
//!
//! A [`GroupSpec`] plays the role of the coset group: element `0` is the
//! coset of the reals itself and every other element indexes one new basis
//! direction. Tables are stored explicitly because rule generation and
//! constraint derivation look up every product, and the groups involved are
//! tiny.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct GroupSpec {
    name: String,
    identity: usize,
    table: Vec<Vec<usize>>,
}

/// On-disk layout: `{"name": str, "order": n, "identity": 0, "table": [[...]]}`.
/// The name may be omitted.
#[derive(Serialize, Deserialize)]
struct RawGroup {
    #[serde(default = "unnamed")]
    name: String,
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

fn unnamed() -> String {
    "group".to_string()
}

impl TryFrom<RawGroup> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        if raw.table.len() != raw.order {
            return Err(Error::GroupFile(format!(
                "order is {} but the table has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        GroupSpec::new(raw.name, raw.identity, raw.table)
    }
}

impl From<GroupSpec> for RawGroup {
    fn from(g: GroupSpec) -> Self {
        RawGroup { name: g.name, order: g.table.len(), identity: g.identity, table: g.table }
    }
}

impl GroupSpec {
    /// Checks only the shape of the table. Whether it is actually a group is
    /// the job of [`validate_group`].
    pub fn new(name: impl Into<String>, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NonSquareTable { expected: n, row, found: entries.len() });
            }
        }
        if identity >= n {
            return Err(Error::IdentityOutOfRange { identity, order: n });
        }
        Ok(GroupSpec { name: name.into(), identity, table })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::GroupFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Product `a·b`. Panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    /// Smallest `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
            if k > self.order() {
                // only reachable for tables that are not groups
                break;
            }
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    /// Relabels elements so that the identity sits at index 0.
    pub fn with_identity_first(&self) -> GroupSpec {
        if self.identity == 0 {
            return self.clone();
        }
        let e = self.identity;
        let swap = |x: usize| {
            if x == 0 {
                e
            } else if x == e {
                0
            } else {
                x
            }
        };
        let n = self.order();
        let table = (0..n)
            .map(|i| (0..n).map(|j| swap(self.table[swap(i)][swap(j)])).collect())
            .collect();
        GroupSpec { name: self.name.clone(), identity: 0, table }
    }

    /// Reorders elements so that new index `t` is old element `order[t]`.
    /// Panics unless `order` is a permutation of the elements.
    pub fn reordered(&self, order: &[usize]) -> GroupSpec {
        let n = self.order();
        let mut position = vec![usize::MAX; n];
        for (t, &x) in order.iter().enumerate() {
            position[x] = t;
        }
        assert!(order.len() == n && position.iter().all(|&p| p < n), "not a permutation");
        let table = order
            .iter()
            .map(|&a| order.iter().map(|&b| position[self.table[a][b]]).collect())
            .collect();
        GroupSpec { name: self.name.clone(), identity: position[self.identity], table }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// The cyclic group of order `n`, with element `i` standing for `gⁱ`.
pub fn make_cyclic(n: usize) -> Result<GroupSpec> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupSpec::new(format!("C{n}"), 0, table)
}

/// The Klein four-group. Elements are `e, g1, g2, g3 = g1·g2`; bitwise xor of
/// the indices is exactly the group law.
pub fn make_klein() -> GroupSpec {
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    GroupSpec::new("V4", 0, table).expect("klein table is square")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Closure,
    Associativity,
    Identity,
    Inverses,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Closure => "closure",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "identity",
            Axiom::Inverses => "inverses",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `table[a][b]` is out of range.
    Pair(usize, usize),
    /// `(ab)c != a(bc)`.
    Triple(usize, usize, usize),
    /// Element without a two-sided identity action or inverse.
    Element(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair(a, b) => write!(f, "pair ({a}, {b})"),
            Witness::Triple(a, b, c) => write!(f, "triple ({a}, {b}, {c})"),
            Witness::Element(a) => write!(f, "element {a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail(Witness),
    /// Not evaluated because closure failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: AxiomStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub group: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == AxiomStatus::Pass)
    }

    pub fn status(&self, axiom: Axiom) -> AxiomStatus {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .map(|c| c.status)
            .expect("every axiom is checked")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| matches!(c.status, AxiomStatus::Fail(_)))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.group)?;
        for c in &self.checks {
            match c.status {
                AxiomStatus::Pass => writeln!(f, "  {:<13} pass", c.axiom)?,
                AxiomStatus::Fail(w) => writeln!(f, "  {:<13} FAIL at {w}", c.axiom)?,
                AxiomStatus::Skipped => writeln!(f, "  {:<13} skipped", c.axiom)?,
            }
        }
        Ok(())
    }
}

/// Checks the four group axioms. Failures are reported with the first
/// witness found in lexicographic order, never as errors.
pub fn validate_group(spec: &GroupSpec) -> ValidationReport {
    let n = spec.order();
    let e = spec.identity;
    let t = &spec.table;

    let closure = (0..n)
        .cartesian_product(0..n)
        .find(|&(a, b)| t[a][b] >= n)
        .map_or(AxiomStatus::Pass, |(a, b)| AxiomStatus::Fail(Witness::Pair(a, b)));

    let (associativity, identity, inverses) = if closure == AxiomStatus::Pass {
        let assoc = (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .find(|&((a, b), c)| t[t[a][b]][c] != t[a][t[b][c]])
            .map_or(AxiomStatus::Pass, |((a, b), c)| AxiomStatus::Fail(Witness::Triple(a, b, c)));
        let ident = (0..n)
            .find(|&a| t[e][a] != a || t[a][e] != a)
            .map_or(AxiomStatus::Pass, |a| AxiomStatus::Fail(Witness::Element(a)));
        let inv = (0..n)
            .find(|&a| spec.inverse(a).is_none())
            .map_or(AxiomStatus::Pass, |a| AxiomStatus::Fail(Witness::Element(a)));
        (assoc, ident, inv)
    } else {
        (AxiomStatus::Skipped, AxiomStatus::Skipped, AxiomStatus::Skipped)
    };

    ValidationReport {
        group: spec.name.clone(),
        checks: vec![
            AxiomCheck { axiom: Axiom::Closure, status: closure },
            AxiomCheck { axiom: Axiom::Associativity, status: associativity },
            AxiomCheck { axiom: Axiom::Identity, status: identity },
            AxiomCheck { axiom: Axiom::Inverses, status: inverses },
        ],
    }
}

/// A table-preserving relabeling of group elements. `perm[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (0..n).collect() }
    }

    /// Returns `None` unless `perm` is a permutation preserving `spec`'s table.
    pub fn new(spec: &GroupSpec, perm: Vec<usize>) -> Option<Self> {
        let n = spec.order();
        if perm.len() != n || !perm.iter().all(|&p| p < n) || perm.iter().unique().count() != n {
            return None;
        }
        let preserves = (0..n)
            .cartesian_product(0..n)
            .all(|(i, j)| perm[spec.mul(i, j)] == spec.mul(perm[i], perm[j]));
        preserves.then_some(Automorphism { perm })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&x| self.perm[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// All automorphisms, by brute force over permutations fixing the identity.
/// The identity map comes first; the rest follow in lexicographic order.
pub fn automorphisms(spec: &GroupSpec) -> Vec<Automorphism> {
    let n = spec.order();
    let e = spec.identity;
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    others
        .iter()
        .copied()
        .permutations(others.len())
        .filter_map(|images| {
            let mut perm = vec![e; n];
            for (&src, &dst) in others.iter().zip(&images) {
                perm[src] = dst;
            }
            Automorphism::new(spec, perm)
        })
        .collect()
}

/// Finds a bijection `f` with `f(a·b) = f(a)·f(b)` from `a` onto `b`.
pub fn find_isomorphism(a: &GroupSpec, b: &GroupSpec) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    images[a.identity] = b.identity;
    used[b.identity] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.identity).collect();
    if extend_iso(a, b, &order, 0, &mut images, &mut used) {
        Some(images)
    } else {
        None
    }
}

fn extend_iso(
    a: &GroupSpec,
    b: &GroupSpec,
    order: &[usize],
    depth: usize,
    images: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.order() {
        if used[y] || a.element_order(x) != b.element_order(y) {
            continue;
        }
        images[x] = y;
        used[y] = true;
        // every product whose operands and result are all mapped must agree
        let consistent = order[..=depth].iter().chain(std::iter::once(&a.identity)).all(|&p| {
            order[..=depth].iter().chain(std::iter::once(&a.identity)).all(|&q| {
                let r = a.mul(p, q);
                images[r] == usize::MAX || images[r] == b.mul(images[p], images[q])
            })
        });
        if consistent && extend_iso(a, b, order, depth + 1, images, used) {
            return true;
        }
        images[x] = usize::MAX;
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables() {
        assert_eq!(make_cyclic(2).unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        let c3 = make_cyclic(3).unwrap();
        // g·g = g², g·g² = e
        assert_eq!(c3.mul(1, 1), 2);
        assert_eq!(c3.mul(1, 2), 0);
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.mul(1, 1), 2);
        assert_eq!(c4.mul(2, 2), 0);
        assert_eq!(make_cyclic(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn klein_table() {
        let v4 = make_klein();
        for x in 1..4 {
            assert_eq!(v4.mul(x, x), 0);
        }
        assert_eq!(v4.mul(1, 2), 3);
        assert!((0..4).all(|j| v4.mul(0, j) == j));
        assert!(!v4.is_cyclic());
        assert!(v4.is_abelian());
    }

    #[test]
    fn builtin_groups_validate() {
        for g in [make_cyclic(1).unwrap(), make_cyclic(2).unwrap(), make_cyclic(3).unwrap(), make_klein()] {
            let report = validate_group(&g);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn out_of_range_entry_fails_closure_and_skips_rest() {
        let g = GroupSpec::new("bad", 0, vec![vec![0, 1], vec![1, 7]]).unwrap();
        let r = validate_group(&g);
        assert_eq!(r.status(Axiom::Closure), AxiomStatus::Fail(Witness::Pair(1, 1)));
        assert_eq!(r.status(Axiom::Associativity), AxiomStatus::Skipped);
        assert!(!r.passed());
    }

    #[test]
    fn missing_inverse_is_reported() {
        // {0,1} under max: associative with identity 0, but 1 has no inverse
        let g = GroupSpec::new("max", 0, vec![vec![0, 1], vec![1, 1]]).unwrap();
        let r = validate_group(&g);
        assert_eq!(r.status(Axiom::Associativity), AxiomStatus::Pass);
        assert_eq!(r.status(Axiom::Inverses), AxiomStatus::Fail(Witness::Element(1)));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            GroupSpec::new("ragged", 0, vec![vec![0, 1], vec![1]]),
            Err(Error::NonSquareTable { row: 1, .. })
        ));
        assert!(matches!(GroupSpec::new("e", 3, vec![vec![0]]), Err(Error::IdentityOutOfRange { .. })));
        assert!(GroupSpec::from_json(r#"{"name":"x","order":3,"identity":0,"table":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn json_round_trip_uses_documented_keys() {
        let g = make_klein();
        let json = g.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["order"], 4);
        assert_eq!(v["identity"], 0);
        assert_eq!(v["name"], "V4");
        assert_eq!(GroupSpec::from_json(&json).unwrap(), g);
    }

    #[test]
    fn identity_relabeling() {
        // C2 with the identity stored at index 1
        let g = GroupSpec::new("c2", 1, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(validate_group(&g).passed());
        let h = g.with_identity_first();
        assert_eq!(h.identity(), 0);
        assert_eq!(h.table(), make_cyclic(2).unwrap().table());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&make_cyclic(3).unwrap()).len(), 2);
        assert_eq!(automorphisms(&make_cyclic(4).unwrap()).len(), 2);
        assert_eq!(automorphisms(&make_klein()).len(), 6);
        assert_eq!(automorphisms(&make_cyclic(1).unwrap()), vec![Automorphism::identity(1)]);
        let c4 = automorphisms(&make_cyclic(4).unwrap());
        assert!(c4[0].is_identity());
        assert_eq!(c4[1].perm(), &[0, 3, 2, 1]);
    }

    #[test]
    fn isomorphism_distinguishes_order_four_groups() {
        let c4 = make_cyclic(4).unwrap();
        assert!(find_isomorphism(&c4, &make_klein()).is_none());
        assert!(find_isomorphism(&c4, &c4).is_some());
    }
}
