use thiserror::Error;

/// Errors surfaced by the exact checkers and constructors.
///
/// Everything here is a *structural* failure: bad input data, a violated
/// precondition, or a probe that cannot be decided inside the configured
/// cutoffs. Identity checks that merely *fail* do not error; they produce
/// a failed check with a witness in the report instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("morphism datum is malformed or violates a morphism law: {0}")]
    NotAMorphismDatum(String),

    #[error("probe not decidable inside cutoffs (truncation-unsound): {0}")]
    TruncationUnsound(String),

    #[error("element does not satisfy the Maurer-Cartan equation: {0}")]
    NotMaurerCartan(String),

    #[error("action is not representable by a morphism: {0}")]
    NotRepresentable(String),

    #[error("action axiom violated: {0}")]
    ActionAxiomViolation(String),

    #[error("left and right actions do not commute: {0}")]
    ActionsDoNotCommute(String),

    #[error("not an A-infinity morphism triple: {0}")]
    NotAInftyStructure(String),

    #[error("element is not a Maurer-Cartan solution of the expected shape: {0}")]
    NotAMorphismSolution(String),

    #[error("element is not in the compatible subalgebra: {0}")]
    NotInSubalgebraH(String),

    #[error("construction requires an injective morphism: {0}")]
    InjectivityRequired(String),

    #[error("not an associative (dg) algebra: {0}")]
    NotAssociative(String),

    #[error("invalid input data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
