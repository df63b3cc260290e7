use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("cayley table must be {expected}x{expected}, row {row} has {found} entries")]
    NonSquareTable { expected: usize, row: usize, found: usize },

    #[error("identity index {identity} out of range for order {order}")]
    IdentityOutOfRange { identity: usize, order: usize },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("malformed group file: {0}")]
    GroupFile(String),

    #[error("assignment has no value for slot `{0}`")]
    IncompleteAssignment(String),

    #[error("unknown slot `{0}`")]
    UnknownSlot(String),

    #[error("operation requires a {expected} pattern, got {found}")]
    PatternMismatch { expected: &'static str, found: String },

    #[error("signature procedure requires nonzero alpha, beta, gamma and rho''")]
    ZeroSignature,

    #[error("rho''^4 = {rho_pp4} does not equal rho^2 = {rho2}; no consistent assignment")]
    InconsistentSignature { rho_pp4: String, rho2: String },

    #[error("assignment violates {0} associativity constraint(s)")]
    NotAssociative(usize),

    #[error("numbers belong to different systems")]
    SystemMismatch,

    #[error("expected {expected} coefficients, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not invertible (determinant is zero)")]
    NoInverse,

    #[error("cannot parse `{0}` as a rational")]
    ParseRational(String),

    #[error("cannot parse number literal: {0}")]
    ParseNumber(String),

    #[error("unknown number system `{0}`")]
    UnknownSystem(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("matrices do not have the layout of the {0} pattern")]
    LayoutMismatch(String),

    #[error("registry: {0}")]
    Registry(String),
}
