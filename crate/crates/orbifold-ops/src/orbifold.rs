use strand_map::osd::{CutRecord, Kind, OsdDocument};
use strand_map::{apply_move, find_move, DartKind, FaceId, MapError, Move, Side, StrandDiagram, StrandMap};
use thiserror::Error;

/// A crossing of the cut with strand segment `seg` of `strand`; `omega` is
/// the side of the segment on which the cone point lies.
pub type CutCrossing = CutRecord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("document is not an orbifold diagram")]
    NotOrbifold,
    #[error("order {0} of the cone point must be at least 2")]
    BadOrder(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("cut crossing {index} does not continue from the previous face")]
    CutBroken { index: usize },
    #[error("cut does not end on the boundary arc between the last and first point")]
    CutEnd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldDiagram {
    base: StrandDiagram,
    order: usize,
    cut: Vec<CutCrossing>,
}

/// Clockwise motion around the cone point counts +1: that is crossing the
/// cut with the cone point on the right.
pub fn cut_sign(omega: Side) -> i64 {
    match omega {
        Side::Right => 1,
        Side::Left => -1,
    }
}

impl OrbifoldDiagram {
    pub fn new(base: StrandDiagram, order: usize, cut: Vec<CutCrossing>) -> Result<Self, OrbifoldError> {
        if order < 2 {
            return Err(OrbifoldError::BadOrder(order));
        }
        let o = OrbifoldDiagram { base, order, cut };
        let map = StrandMap::build(&o.base)?;
        o.check_cut(&map)?;
        Ok(o)
    }

    pub fn from_osd(doc: &OsdDocument) -> Result<Self, OrbifoldError> {
        match (doc.kind, doc.order) {
            (Kind::Orbifold, Some(d)) => OrbifoldDiagram::new(doc.diagram.clone(), d, doc.cut.clone()),
            _ => Err(OrbifoldError::NotOrbifold),
        }
    }

    pub fn to_osd(&self) -> OsdDocument {
        OsdDocument { kind: Kind::Orbifold, diagram: self.base.clone(), order: Some(self.order), cut: self.cut.clone() }
    }

    pub fn base(&self) -> &StrandDiagram {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n0(&self) -> usize {
        self.base.n_points()
    }

    pub fn cut(&self) -> &[CutCrossing] {
        &self.cut
    }

    /// Same picture, different cone order.
    pub fn with_order(&self, order: usize) -> Result<Self, OrbifoldError> {
        if order < 2 {
            return Err(OrbifoldError::BadOrder(order));
        }
        Ok(OrbifoldDiagram { order, ..self.clone() })
    }

    pub fn map(&self) -> StrandMap {
        StrandMap::build(&self.base).expect("checked on construction")
    }

    fn check_cut(&self, map: &StrandMap) -> Result<(), OrbifoldError> {
        let target = map.arc_face(self.n0() - 1);
        let mut far = None;
        for (i, r) in self.cut.iter().enumerate() {
            let near = map.face_on(r.strand, r.seg, r.omega);
            if let Some(f) = far {
                if f != near {
                    return Err(OrbifoldError::CutBroken { index: i });
                }
            }
            far = Some(map.face_on(r.strand, r.seg, r.omega.flip()));
        }
        match far {
            Some(f) if f != target => Err(OrbifoldError::CutEnd),
            _ => Ok(()),
        }
    }

    /// Face containing the cone point.
    pub fn omega_face(&self, map: &StrandMap) -> FaceId {
        match self.cut.first() {
            Some(r) => map.face_on(r.strand, r.seg, r.omega),
            None => map.arc_face(self.n0() - 1),
        }
    }

    /// Signed number of cut crossings on one segment.
    pub fn seg_shift(&self, strand: usize, seg: usize) -> i64 {
        self.cut.iter().filter(|r| r.strand == strand && r.seg == seg).map(|r| cut_sign(r.omega)).sum()
    }

    /// Per-segment signed cut counts of a strand.
    pub fn strand_shifts(&self, strand: usize) -> Vec<i64> {
        let mut v = vec![0; self.base.n_segments(strand)];
        for r in self.cut.iter().filter(|r| r.strand == strand) {
            v[r.seg] += cut_sign(r.omega);
        }
        v
    }

    /// Total winding of a strand: its signed cut count.
    pub fn strand_winding(&self, strand: usize) -> i64 {
        self.strand_shifts(strand).iter().sum()
    }

    /// Winding of the part of `strand` between nodes `from < to` (node 0 is
    /// the start point, node k the k-th crossing, the last node the end).
    pub fn path_winding(&self, strand: usize, from: usize, to: usize) -> i64 {
        self.strand_shifts(strand)[from..to].iter().sum()
    }

    /// Signed segments of the cone-point face border, for comparisons that
    /// must not depend on crossing labels.
    fn omega_signature(&self) -> Vec<(usize, usize, bool)> {
        let map = self.map();
        let f = self.omega_face(&map);
        let mut v: Vec<_> = map
            .face(f)
            .border
            .iter()
            .map(|&d| match map.kind(d) {
                DartKind::Segment { strand, seg, forward } => (strand, seg, forward),
                DartKind::Arc { arc, clockwise } => (usize::MAX, arc, clockwise),
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// Same map, same order and the cone point in the same face.
    pub fn is_isomorphic(&self, other: &OrbifoldDiagram) -> bool {
        self.order == other.order
            && self.base.is_isomorphic(&other.base)
            && self.omega_signature() == other.omega_signature()
    }

    /// Reduction moves that never pull a strand across the cone point.
    pub fn reduce(&self) -> (OrbifoldDiagram, Vec<Move>) {
        let mut cur = self.clone();
        let mut log = Vec::new();
        loop {
            let map = cur.map();
            let omega = cur.omega_face(&map);
            let Some((mv, removed)) = find_move(&cur.base, &map, |f| f == omega) else { break };
            let (base, remap) = apply_move(&cur.base, &removed);
            let mut cut: Vec<CutCrossing> = Vec::with_capacity(cur.cut.len());
            for r in &cur.cut {
                let moved = CutRecord { seg: remap.get(r.strand, r.seg), ..*r };
                match cut.last() {
                    Some(prev) if prev.strand == moved.strand && prev.seg == moved.seg && prev.omega != moved.omega => {
                        cut.pop();
                    }
                    _ => cut.push(moved),
                }
            }
            cur = OrbifoldDiagram { base, order: cur.order, cut };
            log.push(mv);
        }
        (cur, log)
    }
}
