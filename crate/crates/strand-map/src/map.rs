use crate::diagram::{Side, StrandDiagram, Visit};
use thiserror::Error;

pub type Dart = usize;
pub type FaceId = usize;

/// Face id of the unbounded face outside the disk.
pub const OUTER: FaceId = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DartKind {
    Segment { strand: usize, seg: usize, forward: bool },
    Arc { arc: usize, clockwise: bool },
}

/// Which of the two strands meeting at a marked point leaves it on the
/// clockwise side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrangement {
    OutgoingClockwise,
    IncomingClockwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceKind {
    Boundary,
    Alternating,
    Cyclic,
    /// Orientation pattern that is neither; only occurs when alternation fails.
    Mixed,
}

impl FaceKind {
    /// Boundary faces are treated as alternating for labels and quivers.
    pub fn is_alternating_like(self) -> bool {
        matches!(self, FaceKind::Boundary | FaceKind::Alternating)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub border: Vec<Dart>,
    pub kind: FaceKind,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("the clockwise boundary arcs do not close into a single outer face")]
    InconsistentMap,
    #[error("rotation system is not planar: V - E + F = {0}, expected 1")]
    NotPlanar(i64),
    #[error("diagram has no marked points")]
    Empty,
}

/// Rotation system and faces of a strand diagram.
#[derive(Clone, Debug)]
pub struct StrandMap {
    n_points: usize,
    seg_base: Vec<usize>,
    n_seg: usize,
    kinds: Vec<DartKind>,
    cw_next: Vec<Dart>,
    face_of: Vec<FaceId>,
    faces: Vec<Face>,
    arrangement: Vec<Arrangement>,
    crossing_rot: Vec<[Dart; 4]>,
}

impl StrandMap {
    pub fn build(d: &StrandDiagram) -> Result<StrandMap, MapError> {
        let n = d.n_points();
        if n == 0 {
            return Err(MapError::Empty);
        }
        let mut seg_base = Vec::with_capacity(n);
        let mut n_seg = 0;
        for s in 0..n {
            seg_base.push(n_seg);
            n_seg += d.n_segments(s);
        }
        let n_darts = 2 * (n_seg + n);
        let mut kinds = Vec::with_capacity(n_darts);
        for s in 0..n {
            for seg in 0..d.n_segments(s) {
                kinds.push(DartKind::Segment { strand: s, seg, forward: true });
                kinds.push(DartKind::Segment { strand: s, seg, forward: false });
            }
        }
        for arc in 0..n {
            kinds.push(DartKind::Arc { arc, clockwise: true });
            kinds.push(DartKind::Arc { arc, clockwise: false });
        }
        let fwd = |s: usize, g: usize| 2 * (seg_base[s] + g);
        let arc_cw = |p: usize| 2 * (n_seg + p);

        let mut cw_next = vec![usize::MAX; n_darts];
        let mut link = |ring: &[Dart]| {
            for i in 0..ring.len() {
                cw_next[ring[i]] = ring[(i + 1) % ring.len()];
            }
        };

        let mut crossing_rot = Vec::with_capacity(d.n_crossings());
        for c in d.crossings() {
            let a_in = fwd(c.a.strand, c.a.pos) + 1;
            let a_out = fwd(c.a.strand, c.a.pos + 1);
            let b_in = fwd(c.b.strand, c.b.pos) + 1;
            let b_out = fwd(c.b.strand, c.b.pos + 1);
            let ring = match c.chir.side() {
                Side::Left => [a_in, b_in, a_out, b_out],
                Side::Right => [a_in, b_out, a_out, b_in],
            };
            link(&ring);
            crossing_rot.push(ring);
        }

        let tau_inv = d.tau_inv();
        let arrangement = arrangements(d);
        for p in 0..n {
            let out = fwd(p, 0);
            let inc = fwd(tau_inv[p], d.n_segments(tau_inv[p]) - 1) + 1;
            let cw = arc_cw(p);
            let ccw = arc_cw((p + n - 1) % n) + 1;
            let ring = match arrangement[p] {
                Arrangement::OutgoingClockwise => [cw, out, inc, ccw],
                Arrangement::IncomingClockwise => [cw, inc, out, ccw],
            };
            link(&ring);
        }

        let mut map = StrandMap {
            n_points: n,
            seg_base,
            n_seg,
            kinds,
            cw_next,
            face_of: vec![usize::MAX - 1; n_darts],
            faces: Vec::new(),
            arrangement,
            crossing_rot,
        };
        map.trace()?;
        let v = (d.n_crossings() + n) as i64;
        let e = (n_seg + n) as i64;
        let f = map.faces.len() as i64;
        if v - e + f != 1 {
            return Err(MapError::NotPlanar(v - e + f));
        }
        Ok(map)
    }

    fn trace(&mut self) -> Result<(), MapError> {
        let n_darts = self.kinds.len();
        let outer_start = 2 * self.n_seg;
        let mut outer = Vec::new();
        let mut d = outer_start;
        loop {
            outer.push(d);
            self.face_of[d] = OUTER;
            d = self.next_in_face(d);
            if d == outer_start {
                break;
            }
        }
        if outer.len() != self.n_points
            || outer.iter().any(|&x| !matches!(self.kinds[x], DartKind::Arc { clockwise: true, .. }))
        {
            return Err(MapError::InconsistentMap);
        }
        let order = (0..2 * self.n_seg).chain((0..self.n_points).map(|p| 2 * (self.n_seg + p) + 1));
        for start in order {
            if self.face_of[start] != usize::MAX - 1 {
                continue;
            }
            let id = self.faces.len();
            let mut border = Vec::new();
            let mut d = start;
            loop {
                if border.len() > n_darts {
                    return Err(MapError::InconsistentMap);
                }
                border.push(d);
                self.face_of[d] = id;
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            let kind = self.classify(&border);
            self.faces.push(Face { id, border, kind });
        }
        Ok(())
    }

    fn classify(&self, border: &[Dart]) -> FaceKind {
        let mut dirs = Vec::with_capacity(border.len());
        for &d in border {
            match self.kinds[d] {
                DartKind::Arc { .. } => return FaceKind::Boundary,
                DartKind::Segment { forward, .. } => dirs.push(forward),
            }
        }
        if dirs.iter().all(|&f| f == dirs[0]) {
            FaceKind::Cyclic
        } else if (0..dirs.len()).all(|i| dirs[i] != dirs[(i + 1) % dirs.len()]) {
            FaceKind::Alternating
        } else {
            FaceKind::Mixed
        }
    }

    pub fn twin(d: Dart) -> Dart {
        d ^ 1
    }

    /// Next dart along the face on the left of `d`.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.cw_next[d ^ 1]
    }

    pub fn cw_next(&self, d: Dart) -> Dart {
        self.cw_next[d]
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_darts(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, d: Dart) -> DartKind {
        self.kinds[d]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    /// Face on the left of a dart; `OUTER` for clockwise arcs.
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    pub fn arrangement(&self, point: usize) -> Arrangement {
        self.arrangement[point]
    }

    pub fn n_segments_total(&self) -> usize {
        self.n_seg
    }

    pub fn segment_index(&self, strand: usize, seg: usize) -> usize {
        self.seg_base[strand] + seg
    }

    pub fn forward(&self, strand: usize, seg: usize) -> Dart {
        2 * (self.seg_base[strand] + seg)
    }

    pub fn backward(&self, strand: usize, seg: usize) -> Dart {
        self.forward(strand, seg) + 1
    }

    pub fn left_face(&self, strand: usize, seg: usize) -> FaceId {
        self.face_of[self.forward(strand, seg)]
    }

    pub fn right_face(&self, strand: usize, seg: usize) -> FaceId {
        self.face_of[self.backward(strand, seg)]
    }

    /// Face on the given side of a segment.
    pub fn face_on(&self, strand: usize, seg: usize, side: Side) -> FaceId {
        match side {
            Side::Left => self.left_face(strand, seg),
            Side::Right => self.right_face(strand, seg),
        }
    }

    /// Boundary face containing the arc from point `p` to point `p+1`.
    pub fn arc_face(&self, p: usize) -> FaceId {
        self.face_of[2 * (self.n_seg + p) + 1]
    }

    /// Darts leaving a crossing in clockwise order, starting with the first
    /// visit's incoming half.
    pub fn crossing_rotation(&self, c: usize) -> [Dart; 4] {
        self.crossing_rot[c]
    }

    /// Faces in the four corners of a crossing; corner `i` lies clockwise
    /// after dart `i` of `crossing_rotation`.
    pub fn crossing_corners(&self, c: usize) -> [FaceId; 4] {
        let r = self.crossing_rot[c];
        [self.face_of[r[1]], self.face_of[r[2]], self.face_of[r[3]], self.face_of[r[0]]]
    }

    pub fn segments_of_face(&self, f: FaceId) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.faces[f].border.iter().filter_map(move |&d| match self.kinds[d] {
            DartKind::Segment { strand, seg, forward } => Some((strand, seg, forward)),
            DartKind::Arc { .. } => None,
        })
    }

    /// Faces reachable from `start` without crossing a blocked segment.
    /// Arcs are never crossed.
    pub fn flood(&self, start: FaceId, blocked: impl Fn(usize, usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.faces.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(f) = stack.pop() {
            for &d in &self.faces[f].border {
                if let DartKind::Segment { strand, seg, .. } = self.kinds[d] {
                    if blocked(strand, seg) {
                        continue;
                    }
                    let g = self.face_of[d ^ 1];
                    if g != OUTER && !seen[g] {
                        seen[g] = true;
                        stack.push(g);
                    }
                }
            }
        }
        seen
    }
}

pub(crate) fn arrangements(d: &StrandDiagram) -> Vec<Arrangement> {
    let tau_inv = d.tau_inv();
    (0..d.n_points()).map(|p| arrangement_at(d, p, tau_inv[p])).collect()
}

/// Which strand is clockwise at point `p`, read off from alternation: the
/// outgoing strand's first crossing, else the incoming strand's last one.
fn arrangement_at(d: &StrandDiagram, p: usize, incoming: usize) -> Arrangement {
    if !d.strand(p).is_empty() {
        return match d.side_at(Visit::new(p, 0)) {
            Side::Left => Arrangement::OutgoingClockwise,
            Side::Right => Arrangement::IncomingClockwise,
        };
    }
    let len = d.strand(incoming).len();
    if len > 0 {
        return match d.side_at(Visit::new(incoming, len - 1)) {
            Side::Right => Arrangement::OutgoingClockwise,
            Side::Left => Arrangement::IncomingClockwise,
        };
    }
    Arrangement::OutgoingClockwise
}

/// Side from which the partner strand meets `strand` at its start or end
/// point, given the arrangement there.
pub(crate) fn boundary_side(arr: Arrangement, at_start: bool) -> Side {
    match (arr, at_start) {
        (Arrangement::OutgoingClockwise, true) => Side::Right,
        (Arrangement::OutgoingClockwise, false) => Side::Left,
        (Arrangement::IncomingClockwise, true) => Side::Left,
        (Arrangement::IncomingClockwise, false) => Side::Right,
    }
}
