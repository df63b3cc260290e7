//! Hypercomplex number systems generated from finite groups.
//!
//! A finite group `G` with identity `e₀` fixes the shape of a multiplication
//! table on the basis `{eₓ : x ∈ G}`: the product `eₓ∘e_y` is a scalar
//! multiple of `e_{xy}`. The scalars, one per ordered pair of non-identity
//! elements, are the slots of a [`RulePattern`]. Requiring associativity
//! turns into monomial equalities between slots ([`derive_constraints`]),
//! and each solution ([`ParamAssignment`]) is a number system.
//!
//! ```
//! use cosetnum::{builtin_system, Rational};
//!
//! let q = builtin_system("quaternion")?;
//! let i = q.basis(1);
//! let j = q.basis(2);
//! assert_eq!(i.mul(&j)?.to_string(), "(0, 0, 0, 1)");
//! assert_eq!(i.mul(&i)?, q.one().neg());
//! assert_eq!(q.parse("(1, 1, 1, 1)")?.det(), Rational::from_integer(16.into()));
//! # Ok::<(), cosetnum::Error>(())
//! ```
//!
//! All arithmetic is exact over [`Rational`].

pub mod algebra;
pub mod doubling;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod matrix;
pub mod rational;
pub mod registry;
pub mod ruleset;
pub mod tables;

pub use algebra::{GeneralNumber, NumberSystem};
pub use doubling::{double, verify_correspondence, DoublingSpec};
pub use enumerate::{canonicalize, classify, enumerate_assignments, AssignmentClass, Filter};
pub use error::{Error, Result};
pub use group::{automorphisms, make_cyclic, make_klein, validate_group, Automorphism, GroupSpec, ValidationReport};
pub use matrix::RepMatrix;
pub use rational::{parse_rational, Rational};
pub use registry::{builtin_group, builtin_pattern, builtin_system};
pub use ruleset::{
    assign_from_signature, build_pattern, check_assignment, derive_constraints, signatures, ConstraintSet,
    ParamAssignment, PatternKind, RulePattern, Signature, SlotId,
};
pub use tables::{reproduce_table, ClassTable, WhichTable};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/rules.md")]
    mod rules {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/doubling.md")]
    mod doubling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
