//! Region labels.
//!
//! In a Postnikov diagram a face is labelled by the strands that have it on
//! their left. Orbifold diagrams get labels in two independent ways: from the
//! labels of the `d`-fold cover, read up to rotation, and directly on the
//! orbifold by relabelling strand segments every time they cross the cut.

mod check;
mod cover;
mod direct;
mod postnikov;
mod subset;

pub use check::{check_labels, cross_validate_labels, LabelCheck};
pub use cover::{orbifold_labels_cover, CoverLabels};
pub use direct::{orbifold_labels_direct, omega_left_of, DirectLabels};
pub use postnikov::{postnikov_labels, FaceLabels};
pub use subset::{LabelClass, Subset};

use strand_map::{FaceId, MapError};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("face {0} is not alternating and carries no label")]
    NotAlternating(FaceId),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("the cover fails Postnikov conditions {0:?}")]
    CoverInvalid(Vec<u8>),
    #[error("lifts of face {0} do not form one rotation class")]
    NotSymmetric(FaceId),
    #[error("the cut passes through face {0} twice")]
    CutNotSimple(FaceId),
    #[error("the left side of label {0} is not well defined")]
    Inconsistent(usize),
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).map(f).collect()
}
