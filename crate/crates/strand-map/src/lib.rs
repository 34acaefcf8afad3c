//! Strand diagrams on a disk with marked boundary points, stored as
//! combinatorial maps.
//!
//! A diagram records, for every strand, the ordered list of crossings it
//! passes through, and for every crossing which two visits meet there and
//! from which side the second strand arrives. That local data fixes the
//! rotation system, from which faces are traced by the usual dart walk.

mod diagram;
mod map;
pub mod osd;
mod reduce;
mod validate;

pub use diagram::{Chirality, Crossing, DiagramError, Side, StrandDiagram, Visit};
pub use map::{Arrangement, Dart, DartKind, Face, FaceId, FaceKind, MapError, StrandMap, OUTER};
pub use reduce::{apply_move, find_move, reduce, Move, SegmentRemap};
pub use validate::{
    alternation, check_grassmannian, loop_interior, loop_is_empty, meetings, same_direction_pairs, self_crossings,
    strand_sides, validate_postnikov, MeetPoint, ValidationReport, Violation,
};
