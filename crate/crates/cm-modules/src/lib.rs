//! Modules over the boundary algebras `B(k, n)` and `B_G`, and the
//! endomorphism algebras of their direct sums.
//!
//! Every module here is graded and free over `K[t]` at each vertex, with
//! arrows acting by monomials. Homomorphisms are solved one degree at a
//! time, which gives a free `K[t]`-basis of each Hom space; truncating at
//! `t^N` then means keeping `t^j * generator` for `j < N`.

mod end;
mod hom;
mod induce;
mod module;
mod skew_end;
mod verify;

pub use end::{Coord, Element, EndAlgebra, Span};
pub use hom::{hom_space, is_isomorphic, HomMap, HomSpace};
pub use induce::induce;
pub use module::{class_module, fold, rank_one, unrolled_vertex, Entry, FiltModule, MonoMatrix, Tag};
pub use skew_end::{skew_end, twist_map, SkewEnd};
pub use verify::{build_t, verify_main, verify_presentation, Report, TData, VerifyError};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("{0} is not a k-subset of 1..n")]
    BadSubset(String),
    #[error("{0} is not in the class")]
    BadRepresentative(String),
    #[error("modules live over different algebras")]
    WrongAlgebra,
    #[error("modules have different truncations")]
    TruncationMismatch,
    #[error("arrow matrices do not fit the generators")]
    Shape,
    #[error("arrow {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("relation {0} does not act as zero")]
    RelationFails(usize),
    #[error("t does not act as t times the identity at vertex {0}")]
    TNotCentral(usize),
    #[error("map is not a combination of the Hom generators")]
    NotInSpan,
    #[error("label set is not closed under the rotation")]
    NotSymmetric,
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
