//! Exact computations in quotients of path algebras over cyclotomic fields.
//!
//! Two engines are provided. [`TruncatedPathAlgebra`] cuts the path algebra
//! at a path length and row-reduces the relation ideal block by block,
//! giving dimensions of `A / (I + paths longer than j)`. [`GradedAlgebra`]
//! works with arrow weights instead and computes a noncommutative Groebner
//! basis up to a weighted degree, which is what radical filtrations of
//! idempotent subalgebras need.

mod echelon;
mod graded;
mod presentation;
mod skew;
mod truncated;

pub use echelon::{axpy, Echelon, SparseVec};
pub use graded::{stable_radical_filtration, GradedAlgebra, RadicalReport};
pub use presentation::{preprojective_presentation, preprojective_presentation_g, PathQuiver, Presentation, Relation, Word};
pub use skew::{rotation_action, skew_basic_dimensions, CyclicAction};
pub use truncated::{frozen_jacobian, preprojective_quotient, preprojective_quotient_g, Block, TruncatedPathAlgebra};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("truncation degree {m} is below the longest relation term ({needed})")]
    DegreeTooSmall { m: usize, needed: usize },
    #[error("group generator is not a quiver automorphism")]
    NotAutomorphism,
    #[error("group generator does not have the stated order")]
    WrongOrder,
    #[error("relation {0} is not homogeneous for the arrow weights")]
    NotHomogeneous(usize),
    #[error("arrow weights must be positive, one per arrow")]
    BadWeights,
}

#[cfg(feature = "parallel")]
pub(crate) fn map_par<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_par<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).map(f).collect()
}
