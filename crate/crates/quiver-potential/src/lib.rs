//! Quivers with potential attached to Postnikov and orbifold diagrams.
//!
//! Alternating regions become vertices, crossings and marked points become
//! arrows, and each cyclic region contributes its fundamental cycle to the
//! potential with sign `+1` when it runs counterclockwise. Coefficients
//! live in a cyclotomic field so that roots of unity stay exact.

mod build;
mod cyc;
mod potential;
mod quiver;

pub use build::{qp_of_orbifold, qp_of_postnikov, rational, Qp, QpError};
pub use cyc::{cyclotomic, phi, Cyc};
pub use potential::{cyclic_derivative, jacobian_relations, DerivativeError, PathSum, Potential, Term};
pub use quiver::{Arrow, Cycle, Quiver, Site, Vertex, VertexLabel};
