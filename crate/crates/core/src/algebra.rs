//! Arithmetic in an instantiated number system.
//!
//! Matrices use the row-vector convention: `M(x)` has `(i, k)` entry equal to
//! the coefficient of `eₖ` in `eᵢ∘x`, so that `v(y)·M(x) = v(y∘x)` and
//! `M(x)·M(y) = M(x∘y)`. The transposed convention is equally valid; this one
//! reproduces the usual `[[a, b], [αb, a]]` layout for two dimensions.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RepMatrix;
use crate::rational::{format_decimal, format_rational, int, parse_rational, Rational};
use crate::ruleset::{check_assignment, derive_constraints, ParamAssignment, RulePattern};

/// A rule pattern together with an associative assignment of its slots.
#[derive(Debug, Clone)]
pub struct NumberSystem {
    name: String,
    pattern: RulePattern,
    assignment: ParamAssignment,
    // structure[i][j] = (target, scale) with eᵢ∘eⱼ = scale·e_target
    structure: Vec<Vec<(usize, Rational)>>,
}

impl PartialEq for NumberSystem {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
    }
}

impl Eq for NumberSystem {}

impl NumberSystem {
    /// Fails with [`Error::NotAssociative`] if the assignment violates any
    /// derived constraint.
    pub fn new(name: impl Into<String>, pattern: RulePattern, assignment: ParamAssignment) -> Result<Arc<Self>> {
        let constraints = derive_constraints(&pattern);
        let outcome = check_assignment(&pattern, &constraints, &assignment)?;
        if !outcome.satisfied {
            return Err(Error::NotAssociative(outcome.violated.len()));
        }
        let values = assignment.values_for(&pattern)?;
        let n = pattern.dim();
        let structure = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (target, slot) = pattern.product(i, j);
                        (target, slot.map_or_else(Rational::one, |s| values[s.0].clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Arc::new(NumberSystem { name: name.into(), pattern, assignment, structure }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pattern(&self) -> &RulePattern {
        &self.pattern
    }

    pub fn assignment(&self) -> &ParamAssignment {
        &self.assignment
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    /// `eᵢ∘eⱼ = scale·e_target`.
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, &Rational) {
        let (t, c) = &self.structure[i][j];
        (*t, c)
    }

    /// Matrices `M(eᵢ)` for every basis element; element 0 gives the identity.
    pub fn generator_matrices(self: &Arc<Self>) -> Vec<RepMatrix> {
        (0..self.dim()).map(|i| self.basis(i).rep_matrix()).collect()
    }

    pub fn number(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<GeneralNumber> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coeffs.len() });
        }
        Ok(GeneralNumber { system: Arc::clone(self), coeffs })
    }

    pub fn from_ints(self: &Arc<Self>, coeffs: &[i64]) -> Result<GeneralNumber> {
        self.number(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(self: &Arc<Self>) -> GeneralNumber {
        GeneralNumber { system: Arc::clone(self), coeffs: vec![Rational::zero(); self.dim()] }
    }

    pub fn one(self: &Arc<Self>) -> GeneralNumber {
        self.basis(0)
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> GeneralNumber {
        let mut x = self.zero();
        x.coeffs[i] = Rational::one();
        x
    }

    /// Parses a coefficient tuple such as `(1, -1/2, 0, 3)`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<GeneralNumber> {
        let coeffs = parse_tuple(text)?;
        if coeffs.len() != self.dim() {
            return Err(Error::ParseNumber(format!(
                "`{}` has {} components, system {} needs {}",
                text.trim(),
                coeffs.len(),
                self.name,
                self.dim()
            )));
        }
        self.number(coeffs)
    }

    pub fn is_commutative(&self) -> bool {
        is_commutative(self)
    }
}

/// Parses `(c0, c1, ...)` into rationals.
pub fn parse_tuple(text: &str) -> Result<Vec<Rational>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::ParseNumber(format!("`{t}` is not a parenthesized tuple")))?;
    inner
        .split(',')
        .map(|c| parse_rational(c).map_err(|_| Error::ParseNumber(format!("bad component `{}` in `{t}`", c.trim()))))
        .collect()
}

#[derive(Debug, Clone)]
pub struct GeneralNumber {
    system: Arc<NumberSystem>,
    coeffs: Vec<Rational>,
}

impl PartialEq for GeneralNumber {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.system, &other.system) && self.coeffs == other.coeffs
    }
}

impl Eq for GeneralNumber {}

fn same_system(a: &Arc<NumberSystem>, b: &Arc<NumberSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GeneralNumber {
    pub fn system(&self) -> &Arc<NumberSystem> {
        &self.system
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check(&self, other: &GeneralNumber) -> Result<()> {
        if same_system(&self.system, &other.system) {
            Ok(())
        } else {
            Err(Error::SystemMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Rational>) -> GeneralNumber {
        GeneralNumber { system: Arc::clone(&self.system), coeffs }
    }

    pub fn add(&self, other: &GeneralNumber) -> Result<GeneralNumber> {
        self.check(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &GeneralNumber) -> Result<GeneralNumber> {
        self.check(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> GeneralNumber {
        self.with_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rational) -> GeneralNumber {
        self.with_coeffs(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Bilinear extension of the basis products.
    pub fn mul(&self, other: &GeneralNumber) -> Result<GeneralNumber> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (t, c) = self.system.basis_product(i, j);
                if !c.is_zero() {
                    out[t] += a * b * c;
                }
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Matrix of right multiplication by `self`.
    pub fn rep_matrix(&self) -> RepMatrix {
        let n = self.coeffs.len();
        let mut m = RepMatrix::zeros(n);
        for i in 0..n {
            for (j, x) in self.coeffs.iter().enumerate() {
                let (k, c) = self.system.basis_product(i, j);
                if !x.is_zero() && !c.is_zero() {
                    m[(i, k)] += x * c;
                }
            }
        }
        m
    }

    pub fn det(&self) -> Rational {
        self.rep_matrix().det()
    }

    /// Two-sided inverse, read off the identity row of `M(x)⁻¹`.
    pub fn inverse(&self) -> Result<GeneralNumber> {
        let inv = self.rep_matrix().inverse().ok_or(Error::NoInverse)?;
        Ok(self.with_coeffs(inv.row(0).to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn decimal(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(format_decimal).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for GeneralNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn add(x: &GeneralNumber, y: &GeneralNumber) -> Result<GeneralNumber> {
    x.add(y)
}

pub fn mul(x: &GeneralNumber, y: &GeneralNumber) -> Result<GeneralNumber> {
    x.mul(y)
}

pub fn rep_matrix(x: &GeneralNumber) -> RepMatrix {
    x.rep_matrix()
}

pub fn det(x: &GeneralNumber) -> Rational {
    x.det()
}

pub fn inverse(x: &GeneralNumber) -> Result<GeneralNumber> {
    x.inverse()
}

/// True iff `eᵢ∘eⱼ = eⱼ∘eᵢ` for every pair of basis elements.
pub fn is_commutative(system: &NumberSystem) -> bool {
    let n = system.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let (t1, c1) = system.basis_product(i, j);
            let (t2, c2) = system.basis_product(j, i);
            c1 == c2 && (c1.is_zero() || t1 == t2)
        })
    })
}
