//! Strand diagrams on a disk with one cone point of order `d`.
//!
//! An orbifold diagram is an ordinary strand diagram on `n0` points together
//! with a cut: a simple curve from the cone point to the boundary arc
//! between points `n0` and 1, recorded as the ordered list of strand
//! segments it crosses. Winding numbers around the cone point are signed
//! cut counts, clockwise positive. Gluing `d` copies along the cut gives
//! the symmetric cover.

mod cover;
mod orbifold;
mod winding;

pub use cover::{find_rotation, quotient, sym_d, Cover, QuotientError, Rotation};
pub use orbifold::{cut_sign, CutCrossing, OrbifoldDiagram, OrbifoldError};
pub use winding::{NotClosed, WeakViolation, WindingReport};
