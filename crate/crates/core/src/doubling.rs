//! Four-dimensional systems built as two-dimensional extensions over a
//! two-dimensional base, `z = A + B·g` with `g² = α_outer`.
//!
//! Each of `A = a + b·u` and `B = c + d·u` (with `u² = α_base`) is expanded to
//! its 2×2 matrix, which turns `[[A, B], [α_outer·B, A]]` into a 4×4 real
//! matrix. The basis is `(1, u, g, u·g)`, which lines up with `(1, i, j, k)`
//! of the Klein pattern.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::NumberSystem;
use crate::error::{Error, Result};
use crate::matrix::RepMatrix;
use crate::rational::{format_rational, int, Rational};
use crate::registry::{builtin_pattern, entry};
use crate::ruleset::{check_assignment, derive_constraints, ParamAssignment, RulePattern};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublingSpec {
    pub base_alpha: Rational,
    pub outer_alpha: Rational,
}

impl DoublingSpec {
    /// The same parameter at both levels.
    pub fn new(alpha: Rational) -> Self {
        DoublingSpec { base_alpha: alpha.clone(), outer_alpha: alpha }
    }

    pub fn with_levels(base_alpha: Rational, outer_alpha: Rational) -> Self {
        DoublingSpec { base_alpha, outer_alpha }
    }

    /// The 4×4 matrix of `a + b·u + c·g + d·u·g`.
    pub fn block_matrix(&self, coeffs: &[Rational; 4]) -> RepMatrix {
        let [a, b, c, d] = coeffs;
        let (ab, ao) = (&self.base_alpha, &self.outer_alpha);
        // 2×2 blocks [[A, B], [αₒ·B, A]] with X = [[x₀, x₁], [α_b·x₁, x₀]]
        RepMatrix::from_rows(vec![
            vec![a.clone(), b.clone(), c.clone(), d.clone()],
            vec![ab * b, a.clone(), ab * d, c.clone()],
            vec![ao * c, ao * d, a.clone(), b.clone()],
            vec![ao * ab * d, ao * c, ab * b, a.clone()],
        ])
    }

    /// Block matrices of the four basis elements.
    pub fn generator_matrices(&self) -> Vec<RepMatrix> {
        (0..4)
            .map(|i| {
                let mut e: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
                e[i] = Rational::one();
                self.block_matrix(&e)
            })
            .collect()
    }

    /// Klein slot values read off the generator matrices.
    pub fn assignment(&self) -> ParamAssignment {
        let pattern = builtin_pattern("klein4").expect("builtin group");
        assignment_from_generators(&pattern, &self.generator_matrices())
            .expect("block matrices follow the Klein layout")
    }

    pub fn label(&self) -> String {
        if self.base_alpha == self.outer_alpha {
            format!("doubled(alpha={})", format_rational(&self.base_alpha))
        } else {
            format!(
                "doubled(base={}, outer={})",
                format_rational(&self.base_alpha),
                format_rational(&self.outer_alpha)
            )
        }
    }
}

/// Recovers slot values from the matrices `M(eᵢ)`, whose row `x` must hold
/// `eₓ∘eᵢ`: a single entry in the column the group table dictates, and
/// nothing else.
pub fn assignment_from_generators(pattern: &RulePattern, generators: &[RepMatrix]) -> Result<ParamAssignment> {
    let n = pattern.dim();
    if generators.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: generators.len() });
    }
    let mut out = ParamAssignment::new();
    for (y, m) in generators.iter().enumerate() {
        if m.size() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.size() });
        }
        for x in 0..n {
            let (target, slot) = pattern.product(x, y);
            let row = m.row(x);
            if let Some(stray) = (0..n).find(|&k| k != target && !row[k].is_zero()) {
                return Err(Error::LayoutMismatch(format!(
                    "e{x}*e{y} has a component along e{stray}, expected only e{target}"
                )));
            }
            match slot {
                Some(s) => out.set(s, row[target].clone()),
                None if !row[target].is_one() => {
                    return Err(Error::LayoutMismatch(format!("e{x}*e{y} must equal e{target}")));
                }
                None => {}
            }
        }
    }
    Ok(out)
}

pub fn double(spec: &DoublingSpec) -> Arc<NumberSystem> {
    let pattern = builtin_pattern("klein4").expect("builtin group");
    NumberSystem::new(spec.label(), pattern, spec.assignment()).expect("doubled systems are associative")
}

/// The registry system the equal-parameter construction should land on.
pub fn expected_system(alpha: &Rational) -> Option<&'static str> {
    if *alpha == int(-1) {
        Some("bicomplex")
    } else if alpha.is_zero() {
        Some("klein-dual")
    } else if *alpha == int(1) {
        Some("hyperbolic")
    } else {
        None
    }
}

/// The doubled assignment satisfies the Klein constraints and, when both
/// levels share a parameter in `{-1, 0, 1}`, equals the registry row for it.
pub fn verify_correspondence(spec: &DoublingSpec) -> bool {
    let pattern = builtin_pattern("klein4").expect("builtin group");
    let assignment = spec.assignment();
    let associative = check_assignment(&pattern, &derive_constraints(&pattern), &assignment)
        .map(|o| o.satisfied)
        .unwrap_or(false);
    if !associative {
        return false;
    }
    if spec.base_alpha != spec.outer_alpha {
        return true;
    }
    match expected_system(&spec.base_alpha) {
        Some(name) => entry(name)
            .and_then(|e| e.values())
            .map(|v| v == assignment.dense())
            .unwrap_or(false),
        None => true,
    }
}
