//! Parameterized multiplication rules and the constraints associativity
//! places on them.
//!
//! For basis elements `eᵢ`, `eⱼ` indexed by group elements, closure of the
//! coset product forces `eᵢ∘eⱼ = c·e_{ij}` for a single scalar `c`. Each ordered
//! pair of non-identity elements gets its own scalar, a *slot*. Products with
//! the identity element carry no scalar.
//!
//! Because every product is one scaled basis element, associativity of a
//! basis triple always reduces to an equality between two products of slot
//! values. [`derive_constraints`] emits exactly those equalities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{validate_group, GroupSpec};
use crate::rational::{format_rational, parse_rational, product, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlotId(pub usize);

/// Which naming scheme a pattern uses. Only the first four have the
/// conventional Greek-letter slot names; anything else gets positional names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Cyclic2,
    Cyclic3,
    Cyclic4,
    Klein,
    General,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::Cyclic2 => "cyclic-2",
            PatternKind::Cyclic3 => "cyclic-3",
            PatternKind::Cyclic4 => "cyclic-4",
            PatternKind::Klein => "klein-4",
            PatternKind::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulePattern {
    group: GroupSpec,
    kind: PatternKind,
    basis_labels: Vec<String>,
    slots: Vec<Slot>,
    // pair_slot[i][j]; None on the identity row and column
    pair_slot: Vec<Vec<Option<SlotId>>>,
}

impl RulePattern {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn param_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, id: SlotId) -> &Slot {
        &self.slots[id.0]
    }

    pub fn slot_ids(&self) -> impl Iterator<Item = SlotId> {
        (0..self.slots.len()).map(SlotId)
    }

    pub fn slot_name(&self, id: SlotId) -> &str {
        &self.slots[id.0].name
    }

    pub fn slot_by_name(&self, name: &str) -> Option<SlotId> {
        let name = normalize_slot_name(name);
        self.slots.iter().position(|s| s.name == name).map(SlotId)
    }

    pub fn slot_at(&self, left: usize, right: usize) -> Option<SlotId> {
        self.pair_slot[left][right]
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// `eᵢ∘eⱼ = value(slot)·e_target`; the slot is `None` when either factor
    /// is the identity.
    pub fn product(&self, left: usize, right: usize) -> (usize, Option<SlotId>) {
        (self.group.mul(left, right), self.pair_slot[left][right])
    }
}

/// Accepts `alpha'`, `alpha’`, `alpha′` and `alpha″` spellings.
fn normalize_slot_name(name: &str) -> String {
    name.trim()
        .replace('\u{2033}', "''")
        .replace(['\u{2032}', '\u{2019}'], "'")
}

/// Builds the rule skeleton for a group. The group is relabeled so that the
/// identity is element 0 and validated first.
/// Slot name with the ordered pair of basis indices it covers.
type NamedSlot = (&'static str, usize, usize);

pub fn build_pattern(group: &GroupSpec) -> Result<RulePattern> {
    let report = validate_group(group);
    if let Some(fail) = report.first_failure() {
        if let crate::group::AxiomStatus::Fail(w) = fail.status {
            return Err(Error::NotAGroup(format!("{} fails {} at {w}", group.name(), fail.axiom)));
        }
    }
    if !report.passed() {
        return Err(Error::NotAGroup(group.name().to_string()));
    }
    let mut group = group.with_identity_first();
    let n = group.order();

    let (kind, labels, named): (PatternKind, Vec<String>, Vec<NamedSlot>) = match n {
        2 => (PatternKind::Cyclic2, labels(&[(1, "i")], n), vec![("alpha", 1, 1)]),
        3 => {
            let (i, j) = (1, group.inverse(1).expect("validated"));
            (
                PatternKind::Cyclic3,
                labels(&[(i, "i"), (j, "j")], n),
                vec![("alpha", i, j), ("beta", i, i), ("gamma", j, j), ("alpha'", j, i)],
            )
        }
        4 if group.is_cyclic() => {
            // basis order 1, i, j, k with i a generator, j = i⁻¹, k = i²
            let g = (1..4).find(|&x| group.element_order(x) == 4).expect("cyclic");
            group = group.reordered(&[0, g, group.inverse(g).expect("validated"), group.mul(g, g)]);
            let (i, j, k) = (1, 2, 3);
            (
                PatternKind::Cyclic4,
                labels(&[(i, "i"), (j, "j"), (k, "k")], n),
                vec![
                    ("alpha", i, j),
                    ("beta", j, k),
                    ("gamma", k, i),
                    ("delta", i, i),
                    ("epsilon", j, j),
                    ("phi", k, k),
                    ("alpha'", j, i),
                    ("beta'", k, j),
                    ("gamma'", i, k),
                ],
            )
        }
        4 => {
            let (i, j, k) = (1, 2, 3);
            (
                PatternKind::Klein,
                labels(&[(i, "i"), (j, "j"), (k, "k")], n),
                vec![
                    ("alpha", i, i),
                    ("beta", j, j),
                    ("gamma", k, k),
                    ("alpha'", j, k),
                    ("beta'", k, i),
                    ("gamma'", i, j),
                    ("alpha''", k, j),
                    ("beta''", i, k),
                    ("gamma''", j, i),
                ],
            )
        }
        _ => {
            let mut ls = vec!["1".to_string()];
            ls.extend((1..n).map(|x| format!("e{x}")));
            (PatternKind::General, ls, Vec::new())
        }
    };

    let slots: Vec<Slot> = if kind == PatternKind::General {
        (1..n)
            .flat_map(|a| (1..n).map(move |b| (a, b)))
            .map(|(a, b)| Slot { left: a, right: b, target: group.mul(a, b), name: format!("p{a}_{b}") })
            .collect()
    } else {
        named
            .into_iter()
            .map(|(name, a, b)| Slot { left: a, right: b, target: group.mul(a, b), name: name.to_string() })
            .collect()
    };

    let mut pair_slot = vec![vec![None; n]; n];
    for (id, s) in slots.iter().enumerate() {
        pair_slot[s.left][s.right] = Some(SlotId(id));
    }
    debug_assert!((1..n).all(|a| (1..n).all(|b| pair_slot[a][b].is_some())));

    Ok(RulePattern { group, kind, basis_labels: labels, slots, pair_slot })
}

fn labels(named: &[(usize, &str)], n: usize) -> Vec<String> {
    let mut out = vec![String::new(); n];
    out[0] = "1".into();
    for &(idx, l) in named {
        out[idx] = l.into();
    }
    out
}

/// Product of slot values, kept as a sorted multiset of slot ids.
pub type Monomial = Vec<SlotId>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equation {
    /// The basis triple `(i, j, k)` whose associativity produced this equation.
    pub triple: [usize; 3],
    /// Slots multiplied in `(eᵢeⱼ)eₖ`.
    pub lhs: Monomial,
    /// Slots multiplied in `eᵢ(eⱼeₖ)`.
    pub rhs: Monomial,
}

impl Equation {
    pub fn holds(&self, values: &[Rational]) -> bool {
        product(self.lhs.iter().map(|s| &values[s.0])) == product(self.rhs.iter().map(|s| &values[s.0]))
    }

    pub fn display<'a>(&'a self, pattern: &'a RulePattern) -> impl fmt::Display + 'a {
        EquationDisplay { eq: self, pattern }
    }
}

struct EquationDisplay<'a> {
    eq: &'a Equation,
    pattern: &'a RulePattern,
}

impl fmt::Display for EquationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &Monomial| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|s| self.pattern.slot_name(*s)).collect::<Vec<_>>().join("*")
            }
        };
        write!(f, "{} = {}", side(&self.eq.lhs), side(&self.eq.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstraintSet {
    pub equations: Vec<Equation>,
}

impl ConstraintSet {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("constraints serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseNumber(e.to_string()))
    }

    pub fn satisfied_by(&self, values: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.holds(values))
    }
}

/// Expands `(eᵢeⱼ)eₖ` and `eᵢ(eⱼeₖ)` for every triple of non-identity basis
/// elements and records the resulting monomial equalities. Trivial equalities
/// are dropped and duplicates keep the first triple that produced them.
pub fn derive_constraints(pattern: &RulePattern) -> ConstraintSet {
    let n = pattern.dim();
    let mut seen = BTreeSet::new();
    let mut equations = Vec::new();
    for i in 1..n {
        for j in 1..n {
            for k in 1..n {
                let (ij, s_ij) = pattern.product(i, j);
                let (left_target, s_left) = pattern.product(ij, k);
                let (jk, s_jk) = pattern.product(j, k);
                let (right_target, s_right) = pattern.product(i, jk);
                assert_eq!(left_target, right_target, "group table is associative");

                let mut lhs: Monomial = [s_ij, s_left].into_iter().flatten().collect();
                let mut rhs: Monomial = [s_jk, s_right].into_iter().flatten().collect();
                lhs.sort();
                rhs.sort();
                if lhs == rhs {
                    continue;
                }
                let key = if lhs <= rhs { (lhs.clone(), rhs.clone()) } else { (rhs.clone(), lhs.clone()) };
                if seen.insert(key) {
                    equations.push(Equation { triple: [i, j, k], lhs, rhs });
                }
            }
        }
    }
    ConstraintSet { equations }
}

/// Concrete slot values. Missing slots are allowed here and rejected by the
/// operations that need a complete assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamAssignment {
    values: BTreeMap<SlotId, Rational>,
    label: Option<String>,
}

impl ParamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Values in slot order.
    pub fn from_values(values: impl IntoIterator<Item = Rational>) -> Self {
        ParamAssignment {
            values: values.into_iter().enumerate().map(|(i, v)| (SlotId(i), v)).collect(),
            label: None,
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_values(values.iter().map(|&v| crate::rational::int(v)))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set(&mut self, slot: SlotId, value: Rational) {
        self.values.insert(slot, value);
    }

    pub fn get(&self, slot: SlotId) -> Option<&Rational> {
        self.values.get(&slot)
    }

    /// Dense value vector in slot order; errors on the first missing slot.
    pub fn values_for(&self, pattern: &RulePattern) -> Result<Vec<Rational>> {
        pattern
            .slot_ids()
            .map(|s| {
                self.values
                    .get(&s)
                    .cloned()
                    .ok_or_else(|| Error::IncompleteAssignment(pattern.slot_name(s).to_string()))
            })
            .collect()
    }

    /// Values in slot order for however many slots are set, assuming they are
    /// contiguous from 0.
    pub fn dense(&self) -> Vec<Rational> {
        self.values.values().cloned().collect()
    }

    pub fn has_zero(&self) -> bool {
        self.values.values().any(Zero::is_zero)
    }

    pub fn to_json(&self, pattern: &RulePattern) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value(pattern)?).expect("json"))
    }

    /// Object mapping slot name to rational string, in slot order.
    pub fn to_json_value(&self, pattern: &RulePattern) -> Result<serde_json::Value> {
        let values = self.values_for(pattern)?;
        let mut entries = Vec::with_capacity(values.len());
        for (id, v) in pattern.slot_ids().zip(values) {
            entries.push((pattern.slot_name(id).to_string(), serde_json::Value::String(format_rational(&v))));
        }
        Ok(ordered_object(entries))
    }

    pub fn from_json(pattern: &RulePattern, text: &str) -> Result<Self> {
        let map: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| Error::ParseNumber(e.to_string()))?;
        let mut out = ParamAssignment::new();
        for (name, value) in map {
            let slot = pattern.slot_by_name(&name).ok_or(Error::UnknownSlot(name))?;
            out.set(slot, parse_rational(&value)?);
        }
        out.values_for(pattern)?;
        Ok(out)
    }

    pub fn display<'a>(&'a self, pattern: &'a RulePattern) -> impl fmt::Display + 'a {
        AssignmentDisplay { a: self, pattern }
    }
}

pub(crate) fn ordered_object(entries: Vec<(String, serde_json::Value)>) -> serde_json::Value {
    serde_json::Value::Object(entries.into_iter().collect())
}

struct AssignmentDisplay<'a> {
    a: &'a ParamAssignment,
    pattern: &'a RulePattern,
}

impl fmt::Display for AssignmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pattern
            .slot_ids()
            .map(|s| {
                let v = self.a.get(s).map_or("?".to_string(), format_rational);
                format!("{}={}", self.pattern.slot_name(s), v)
            })
            .collect();
        write!(f, "{}", parts.join(" "))?;
        if let Some(l) = &self.a.label {
            write!(f, " [{l}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub satisfied: bool,
    pub violated: Vec<Equation>,
}

pub fn check_assignment(
    pattern: &RulePattern,
    constraints: &ConstraintSet,
    assignment: &ParamAssignment,
) -> Result<CheckOutcome> {
    let values = assignment.values_for(pattern)?;
    let violated: Vec<Equation> = constraints.equations.iter().filter(|e| !e.holds(&values)).cloned().collect();
    Ok(CheckOutcome { satisfied: violated.is_empty(), violated })
}

/// `(ρ, ρ′, ρ″) = (αβγ, α′β′γ′, α″β″γ″)` of a Klein assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub rho: Rational,
    pub rho_p: Rational,
    pub rho_pp: Rational,
}

impl Signature {
    pub fn all_zero(&self) -> bool {
        self.rho.is_zero() && self.rho_p.is_zero() && self.rho_pp.is_zero()
    }

    pub fn none_zero(&self) -> bool {
        !self.rho.is_zero() && !self.rho_p.is_zero() && !self.rho_pp.is_zero()
    }
}

fn require_klein(pattern: &RulePattern) -> Result<()> {
    if pattern.kind() == PatternKind::Klein {
        Ok(())
    } else {
        Err(Error::PatternMismatch { expected: "klein-4", found: pattern.kind().to_string() })
    }
}

pub fn signatures(pattern: &RulePattern, assignment: &ParamAssignment) -> Result<Signature> {
    require_klein(pattern)?;
    let v = assignment.values_for(pattern)?;
    Ok(Signature {
        rho: product(&v[0..3]),
        rho_p: product(&v[3..6]),
        rho_pp: product(&v[6..9]),
    })
}

/// Chooses `α, β, γ` and `ρ″`, then sets `α′ = ρ″/α` (and cyclically),
/// `ρ′ = α′β′γ′`, and `α″ = ρ′/α` (and cyclically).
///
/// The result is associative only when `ρ″⁴ = ρ²`; other inputs are rejected.
/// Slot ids follow the Klein pattern built by [`build_pattern`].
pub fn assign_from_signature(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    rho_pp: &Rational,
) -> Result<ParamAssignment> {
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() || rho_pp.is_zero() {
        return Err(Error::ZeroSignature);
    }
    let rho = alpha * beta * gamma;
    let rho_pp2 = rho_pp * rho_pp;
    let rho_pp4 = &rho_pp2 * &rho_pp2;
    let rho2 = &rho * &rho;
    if rho_pp4 != rho2 {
        return Err(Error::InconsistentSignature {
            rho_pp4: format_rational(&rho_pp4),
            rho2: format_rational(&rho2),
        });
    }
    let unprimed = [alpha, beta, gamma];
    let primed: Vec<Rational> = unprimed.iter().map(|&x| rho_pp / x).collect();
    let rho_p = product(&primed);
    let double: Vec<Rational> = unprimed.iter().map(|&x| &rho_p / x).collect();
    Ok(ParamAssignment::from_values(
        unprimed.into_iter().cloned().chain(primed).chain(double),
    ))
}
