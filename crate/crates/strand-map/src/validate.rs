use crate::diagram::{Side, StrandDiagram, Visit};
use crate::map::{arrangements, boundary_side, FaceKind, MapError, StrandMap};

/// A place where two strands meet: an interior crossing or a shared endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeetPoint {
    Crossing(usize),
    Point(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The crossing data does not describe a diagram on a disk.
    Map(MapError),
    /// A crossing where a strand meets itself at one and the same position.
    NotTransverse { label: usize },
    /// Two consecutive meetings along `strand` come from the same side;
    /// `pos` counts from 0 at the start point.
    Alternation { strand: usize, pos: usize },
    /// Both strands run from `first` to `second`.
    DoubleCrossing { strands: (usize, usize), first: MeetPoint, second: MeetPoint },
    /// The loop closed at crossing `label` has something inside it.
    LoopNotEmpty { strand: usize, label: usize },
}

impl Violation {
    /// The axiom (1)..(5) this violation belongs to.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Map(_) => 1,
            Violation::NotTransverse { .. } => 2,
            Violation::Alternation { .. } => 3,
            Violation::DoubleCrossing { .. } => 4,
            Violation::LoopNotEmpty { .. } => 5,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self, condition: u8) -> bool {
        !self.violations.iter().any(|v| v.condition() == condition)
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdicts(&self) -> [(u8, bool); 5] {
        [1, 2, 3, 4, 5].map(|c| (c, self.passed(c)))
    }

    pub fn of_condition(&self, condition: u8) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition() == condition)
    }
}

/// Checks the Postnikov axioms (1)-(5).
pub fn validate_postnikov(d: &StrandDiagram) -> ValidationReport {
    let mut violations = Vec::new();
    let map = match StrandMap::build(d) {
        Ok(m) => Some(m),
        Err(e) => {
            violations.push(Violation::Map(e));
            None
        }
    };
    violations.extend(transversality(d));
    violations.extend(alternation(d));
    for (x, y, a, b) in same_direction_pairs(d) {
        violations.push(Violation::DoubleCrossing { strands: (x, y), first: a, second: b });
    }
    if let Some(map) = &map {
        for (s, q1, q2) in self_crossings(d) {
            if !loop_is_empty(map, s, q1, q2) {
                let label = d.crossing(d.strand(s)[q1]).label;
                violations.push(Violation::LoopNotEmpty { strand: s, label });
            }
        }
    }
    ValidationReport { violations }
}

pub(crate) fn transversality(d: &StrandDiagram) -> Vec<Violation> {
    d.crossings()
        .iter()
        .filter(|c| c.a == c.b)
        .map(|c| Violation::NotTransverse { label: c.label })
        .collect()
}

/// Sides seen along a strand, including the two endpoint meetings.
pub fn strand_sides(d: &StrandDiagram, s: usize) -> Vec<Side> {
    let arr = arrangements(d);
    let mut sides = vec![boundary_side(arr[s], true)];
    for p in 0..d.strand(s).len() {
        sides.push(d.side_at(Visit::new(s, p)));
    }
    sides.push(boundary_side(arr[d.tau()[s]], false));
    sides
}

pub fn alternation(d: &StrandDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    for s in 0..d.n_points() {
        let sides = strand_sides(d, s);
        for (pos, w) in sides.windows(2).enumerate() {
            if w[0] == w[1] {
                out.push(Violation::Alternation { strand: s, pos });
            }
        }
    }
    out
}

/// Meeting points of two distinct strands with their positions on each
/// (0 = start point, k = k-th crossing, len+1 = end point).
pub fn meetings(d: &StrandDiagram, x: usize, y: usize) -> Vec<(MeetPoint, usize, usize)> {
    let mut out = Vec::new();
    let (lx, ly) = (d.strand(x).len(), d.strand(y).len());
    for (p, &c) in d.strand(x).iter().enumerate() {
        let cr = d.crossing(c);
        let other = if cr.a == Visit::new(x, p) { cr.b } else { cr.a };
        if other.strand == y {
            out.push((MeetPoint::Crossing(cr.label), p + 1, other.pos + 1));
        }
    }
    let tau = d.tau();
    if tau[y] == x && tau[x] != x {
        out.push((MeetPoint::Point(x), 0, ly + 1));
    }
    if tau[x] == y && tau[y] != y {
        out.push((MeetPoint::Point(y), lx + 1, 0));
    }
    out
}

/// All pairs of meeting points that two strands traverse in the same order.
pub fn same_direction_pairs(d: &StrandDiagram) -> Vec<(usize, usize, MeetPoint, MeetPoint)> {
    let mut out = Vec::new();
    let n = d.n_points();
    for x in 0..n {
        for y in x + 1..n {
            let m = meetings(d, x, y);
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    let (a, b) = if m[i].1 < m[j].1 { (m[i], m[j]) } else { (m[j], m[i]) };
                    if a.2 < b.2 {
                        out.push((x, y, a.0, b.0));
                    }
                }
            }
        }
    }
    out
}

/// Interior self-crossings as (strand, first pos, second pos).
pub fn self_crossings(d: &StrandDiagram) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<_> = d
        .crossings()
        .iter()
        .filter(|c| c.a.strand == c.b.strand && c.a != c.b)
        .map(|c| (c.a.strand, c.a.pos.min(c.b.pos), c.a.pos.max(c.b.pos)))
        .collect();
    out.sort_unstable();
    out
}

/// Faces enclosed by the loop of strand `s` between positions `q1 < q2`,
/// taken on the side away from the boundary.
pub fn loop_interior(map: &StrandMap, s: usize, q1: usize, q2: usize) -> Vec<usize> {
    let on_loop = |t: usize, g: usize| t == s && g > q1 && g <= q2;
    let touches_boundary = |reach: &[bool]| {
        reach.iter().enumerate().any(|(f, &r)| r && map.face(f).kind == FaceKind::Boundary)
    };
    let left = map.flood(map.left_face(s, q1 + 1), on_loop);
    let side = if touches_boundary(&left) {
        map.flood(map.right_face(s, q1 + 1), on_loop)
    } else {
        left
    };
    side.iter().enumerate().filter(|(_, &r)| r).map(|(f, _)| f).collect()
}

/// True when nothing but the loop itself borders the faces it encloses.
pub fn loop_is_empty(map: &StrandMap, s: usize, q1: usize, q2: usize) -> bool {
    loop_interior(map, s, q1, q2).into_iter().all(|f| {
        map.face(f).kind != FaceKind::Boundary
            && map.segments_of_face(f).all(|(t, g, _)| t == s && g > q1 && g <= q2)
    })
}

/// `Some((k, n))` when strand `i` ends at `i + k (mod n)` with `0 < k < n`.
pub fn check_grassmannian(d: &StrandDiagram) -> Option<(usize, usize)> {
    let n = d.n_points();
    let k = d.tau()[0] % n;
    if k == 0 {
        return None;
    }
    (0..n).all(|i| d.tau()[i] == (i + k) % n).then_some((k, n))
}
