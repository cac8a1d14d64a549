//! Exact-arithmetic computations with homotopy-associative algebra
//! structures carrying brace-style higher operations: identity
//! verification, deformations by square-zero elements, actions on tensor
//! (co)algebras, extensions, the deformation complex of an algebra
//! morphism, and the induced structure on its cohomology.
//!
//! All scalars are arbitrary-precision rationals; every asserted identity
//! is checked pointwise on explicit probes. Structure data is finite and
//! truncated; computations track when a probe would require data beyond
//! the declared cutoffs, and such probes are reported as skipped rather
//! than silently passed.

pub mod actions;
pub mod algebra;
pub mod binfty;
pub mod catalog;
pub mod check;
pub mod diagram;
pub mod error;
pub mod extensions;
pub mod graded;
pub mod hochschild;
pub mod homspace;
pub mod linalg;
pub mod multimap;
pub mod probe;
pub mod transport;
pub mod words;

pub use actions::{
    check_binfty_morphism, morphism_to_action, verify_action, verify_action_over, ActionKind,
    ActionOps, ActionPlan, ActionSide, CoendoAction, EndoAction, InducedAction,
    LeftCompositionAction, MorphismData, MorphismPlan, RightCompositionAction, TableAction,
};
pub use actions::action_to_morphism;
pub use algebra::{
    require_valid_algebra, require_valid_morphism, validate_algebra, validate_morphism,
    AlgebraMorphism, AlgebraPresentation,
};
pub use binfty::{verify_binfty, BInftyOps, Deformed, TableBInfty, VerifyPlan};
pub use check::{CheckSummary, IdentityCheck, ProbeOutcome};
pub use diagram::{DiagramAlgebra, DiagramComparison, DiagramPart, PairComplex};
pub use error::{Error, Result};
pub use extensions::{
    associative_binfty, check_commutation, commutation_checks, compare_structures,
    degree_dimensions, direct_product, extend_by_algebra, extend_by_binfty, extend_two_sided,
    pad_action, AlgebraExtension, BBExtension, ExtensionResult, PaddedAction, ProductBInfty,
    StructureComparison, TwoSidedExtension,
};
pub use graded::{koszul_sign, EvalCtx, GradedSpace, Vector};
pub use hochschild::{structure_operator, suspend, HochschildBInfty};
pub use homspace::{CoHomSpace, CoOperatorBInfty, HomSpace, OperatorBInfty};
pub use linalg::{rat, rat_from_string, rat_int, rat_to_string, Rational, SparseMatrix};
pub use multimap::{matrix_of_map, MultiMap};
pub use probe::ProbeGen;
pub use transport::{bar_transport, cobar_chain_rule_checks, cobar_transport, CobarAction};
pub use words::{MapFamily, WordMap, WordSpace, WordVec};
