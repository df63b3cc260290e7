//! Enumeration of associative assignments over a finite value domain and
//! their classification under relabelings of the basis.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::group::Automorphism;
use crate::rational::{product, Rational};
use crate::ruleset::{ConstraintSet, ParamAssignment, RulePattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Filter {
    #[default]
    All,
    /// Every slot nonzero.
    NonZero,
    /// At least one slot is zero. For the Klein pattern these are exactly
    /// the assignments with vanishing signature.
    ZeroSignature,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(Filter::All),
            "nonzero" => Ok(Filter::NonZero),
            "zero" | "zero-signature" => Ok(Filter::ZeroSignature),
            other => Err(Error::ParseNumber(format!("unknown filter `{other}`"))),
        }
    }
}

/// All assignments in `domain^P` satisfying every constraint and the filter.
///
/// Slots are filled in slot order with the domain in the order given (the
/// first slot varies slowest), and each equation is checked as soon as its
/// last slot is set. The first slot's values are explored in parallel and the
/// results concatenated back in order.
pub fn enumerate_assignments(
    pattern: &RulePattern,
    constraints: &ConstraintSet,
    domain: &[Rational],
    filter: Filter,
) -> Vec<ParamAssignment> {
    let p = pattern.param_count();
    let mut dedup = BTreeSet::new();
    let domain: Vec<Rational> = domain
        .iter()
        .filter(|v| filter != Filter::NonZero || !v.is_zero())
        .filter(|v| dedup.insert((*v).clone()))
        .cloned()
        .collect();
    if p == 0 {
        return vec![ParamAssignment::new()];
    }
    if domain.is_empty() {
        return Vec::new();
    }

    // equations grouped by the highest slot they mention
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); p];
    for (idx, eq) in constraints.equations.iter().enumerate() {
        let last = eq.lhs.iter().chain(&eq.rhs).map(|s| s.0).max().unwrap_or(0);
        ready[last].push(idx);
    }

    let search = Search { constraints, domain: &domain, ready: &ready, filter, p };
    domain
        .par_iter()
        .map(|first| {
            let mut values = Vec::with_capacity(p);
            values.push(first.clone());
            let mut out = Vec::new();
            if search.consistent(&values, 0) {
                search.extend(&mut values, &mut out);
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(ParamAssignment::from_values)
        .collect()
}

struct Search<'a> {
    constraints: &'a ConstraintSet,
    domain: &'a [Rational],
    ready: &'a [Vec<usize>],
    filter: Filter,
    p: usize,
}

impl Search<'_> {
    fn consistent(&self, values: &[Rational], slot: usize) -> bool {
        self.ready[slot].iter().all(|&e| {
            let eq = &self.constraints.equations[e];
            product(eq.lhs.iter().map(|s| &values[s.0])) == product(eq.rhs.iter().map(|s| &values[s.0]))
        })
    }

    fn extend(&self, values: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        let slot = values.len();
        if slot == self.p {
            if self.filter != Filter::ZeroSignature || values.iter().any(Zero::is_zero) {
                out.push(values.clone());
            }
            return;
        }
        for v in self.domain {
            values.push(v.clone());
            if self.consistent(values, slot) {
                self.extend(values, out);
            }
            values.pop();
        }
    }
}

/// Carries an assignment along a relabeling of the basis: the slot of
/// `(σx, σy)` receives the old value of `(x, y)`.
pub fn relabel(pattern: &RulePattern, assignment: &ParamAssignment, auto: &Automorphism) -> ParamAssignment {
    let mut out = ParamAssignment::new();
    for s in pattern.slots() {
        let src = pattern.slot_at(s.left, s.right).expect("non-identity pair");
        let dst = pattern.slot_at(auto.apply(s.left), auto.apply(s.right)).expect("automorphism fixes identity");
        if let Some(v) = assignment.get(src) {
            out.set(dst, v.clone());
        }
    }
    out
}

/// Rescales basis elements `eₓ → sₓ·eₓ` (with `s₀ = 1`), which turns the slot
/// of `(x, y)` into `p(x, y)·sₓ·s_y / s_{xy}`.
pub fn rescale(pattern: &RulePattern, assignment: &ParamAssignment, scales: &[Rational]) -> ParamAssignment {
    assert_eq!(scales.len(), pattern.dim(), "one scale per basis element");
    let mut out = ParamAssignment::new();
    for id in pattern.slot_ids() {
        let s = pattern.slot(id);
        if let Some(v) = assignment.get(id) {
            out.set(id, v * &scales[s.left] * &scales[s.right] / &scales[s.target]);
        }
    }
    out
}

/// True if some choice of signs `sₓ = ±1` maps `a` onto `b` by [`rescale`].
pub fn rescaling_related(pattern: &RulePattern, a: &ParamAssignment, b: &ParamAssignment) -> bool {
    let n = pattern.dim();
    let target = b.dense();
    (0u32..1 << (n - 1)).any(|mask| {
        let scales: Vec<Rational> = (0..n)
            .map(|x| {
                if x > 0 && mask & (1 << (x - 1)) != 0 {
                    -Rational::one()
                } else {
                    Rational::one()
                }
            })
            .collect();
        rescale(pattern, a, &scales).dense() == target
    })
}

/// One equivalence class of assignments under a set of basis relabelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentClass {
    /// Lexicographically smallest member, comparing values in slot order.
    pub representative: ParamAssignment,
    /// All members, sorted.
    pub orbit: Vec<ParamAssignment>,
    pub labels: Vec<String>,
}

impl AssignmentClass {
    pub fn contains(&self, a: &ParamAssignment) -> bool {
        let v = a.dense();
        self.orbit.iter().any(|m| m.dense() == v)
    }
}

pub fn canonicalize(assignment: &ParamAssignment, pattern: &RulePattern, autos: &[Automorphism]) -> AssignmentClass {
    let mut members: Vec<Vec<Rational>> = autos.iter().map(|a| relabel(pattern, assignment, a).dense()).collect();
    members.push(assignment.dense());
    members.sort();
    members.dedup();
    let orbit: Vec<ParamAssignment> = members.into_iter().map(ParamAssignment::from_values).collect();
    AssignmentClass { representative: orbit[0].clone(), orbit, labels: Vec::new() }
}

/// Splits `assignments` into orbits, ordered by representative.
pub fn classify(pattern: &RulePattern, assignments: &[ParamAssignment], autos: &[Automorphism]) -> Vec<AssignmentClass> {
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for a in assignments {
        if seen.contains(&a.dense()) {
            continue;
        }
        let class = canonicalize(a, pattern, autos);
        seen.extend(class.orbit.iter().map(ParamAssignment::dense));
        classes.push(class);
    }
    classes.sort_by_key(|c| c.representative.dense());
    classes
}
