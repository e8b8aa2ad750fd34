//! Semigroup-based Lie-Markov models.
//!
//! Every finite semigroup `S = {a_1, …, a_k}` acts on itself by left
//! multiplication; the matrices `L_i = -I + A_i` of that action span a space of
//! rate matrices closed under the Lie bracket. This crate enumerates the
//! semigroups of small order, builds and deduplicates their models, classifies
//! them and checks closure exactly and numerically.
//!
//! States and semigroup elements are 0-based in the API and 1-based in every
//! rendered document and parsed file.

pub mod catalog;
pub mod cayley;
pub mod closure;
pub mod constructors;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod modelgen;
pub mod perm;
pub mod representation;
pub mod symmetry;

pub use catalog::{run_pipeline, Catalog, CatalogEntry, Format, Source};
pub use cayley::{enumerate_semigroups, CayleyTable};
pub use closure::{check_algebra_closed, check_lie_closed, verify_multiplicative_closure, ClosureReport, Verdict};
pub use error::{Error, Result};
pub use matrix::{IntMatrix, QMatrix};
pub use modelgen::{CanonicalKey, ModelReport, ModelSubspace};
pub use perm::Perm;
pub use symmetry::{GroupName, SymmetryGroup};
