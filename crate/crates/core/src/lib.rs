//! Computing with clonoids: sets of finitary functions `A^k -> B` closed
//! under minors and under the pointwise action of a target algebra on `B`.
//!
//! The crate provides
//! - value-table encodings of functions, minor maps, relation pairs and
//!   algebras, with the minor and polymorphism judgments;
//! - closure engines generating subalgebras, clonoid slices and clone slices;
//! - detectors for Mal'cev, majority and near-unanimity terms and for cube
//!   term blockers, plus the exact classification of two-element targets;
//! - the `e_k` / `f_k` / `(P_n, Q_n)` witness families and verification
//!   suites built from them.

pub mod algebra;
pub mod closure;
pub mod constructions;
pub mod error;
pub mod function;
pub mod relation;
pub mod set;
pub mod terms;
pub mod text;
pub mod verify;

pub use algebra::{Algebra, Operation};
pub use closure::{
    bp_member, clone_contains, clone_slice, clonoid_slice, member, subalgebra_close, Budget,
    GeneratedClonoid, GeneratorFamily,
};
pub use error::{Error, Result};
pub use function::{apply_pointwise, FiniteFunction, MinorMap, Signature};
pub use relation::{is_polymorphism, pol_slice, RelationPair};
pub use set::FunctionSet;
pub use terms::{classify_boolean, cube_term_blocker, ClassificationReport, Verdict};
