//! Exact finite-field computational algebra: Singer-type difference sets
//! as root sets of explicit polynomials, norm-equation systems with the
//! maximum number of solutions, and constructive K_{4,6} embeddings in
//! projective norm graphs, all backed by machine-checkable certificates.

pub mod cert;
pub mod diffsets;
pub mod error;
pub mod field;
pub mod ng;
pub mod normsys;
pub mod poly;
pub mod tower;

pub use error::{Error, Result};
pub use field::{make_extension, Elt, FieldCtx, PrimePower};
pub use poly::Poly;
pub use tower::{NormOneGroup, TowerCtx};
