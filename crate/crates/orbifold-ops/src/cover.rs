use crate::orbifold::{CutCrossing, OrbifoldDiagram, OrbifoldError};
use std::collections::VecDeque;
use strand_map::{Chirality, DartKind, DiagramError, FaceId, MapError, Side, StrandDiagram, StrandMap, Visit};
use thiserror::Error;

/// Rotation of a diagram by `shift` marked points, of order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub order: usize,
    pub shift: usize,
    /// Image of each crossing index.
    pub crossings: Vec<usize>,
}

impl Rotation {
    pub fn strand(&self, s: usize) -> usize {
        (s + self.shift) % (self.shift * self.order)
    }

    pub fn crossing(&self, c: usize) -> usize {
        self.crossings[c]
    }

    /// Image of a dart under the rotation (segments keep their index).
    pub fn dart(&self, map: &StrandMap, d: usize) -> usize {
        match map.kind(d) {
            DartKind::Segment { strand, seg, forward } => {
                let f = map.forward(self.strand(strand), seg);
                if forward {
                    f
                } else {
                    f + 1
                }
            }
            DartKind::Arc { .. } => {
                let n = map.n_points();
                let base = 2 * map.n_segments_total();
                let arc = (d - base) / 2;
                base + 2 * ((arc + self.shift) % n) + (d - base) % 2
            }
        }
    }

    /// The unique face mapped to itself, if any.
    pub fn fixed_face(&self, map: &StrandMap) -> Option<FaceId> {
        map.faces().iter().find(|f| map.face_of(self.dart(map, f.border[0])) == f.id).map(|f| f.id)
    }
}

/// A `d`-fold cover with its deck rotation.
#[derive(Clone, Debug)]
pub struct Cover {
    pub diagram: StrandDiagram,
    pub rotation: Rotation,
    /// For each cover crossing, the base crossing and copy it lifts.
    pub lift: Vec<(usize, usize)>,
}

impl Cover {
    /// Base face under a cover face, read through any segment on its border.
    pub fn project_face(&self, cover_map: &StrandMap, base_map: &StrandMap, f: FaceId) -> FaceId {
        let n0 = self.rotation.shift;
        for &d in &cover_map.face(f).border {
            if let DartKind::Segment { strand, seg, forward } = cover_map.kind(d) {
                let b = base_map.forward(strand % n0, seg);
                return base_map.face_of(if forward { b } else { b + 1 });
            }
        }
        let arc = match cover_map.kind(cover_map.face(f).border[0]) {
            DartKind::Arc { arc, .. } => arc,
            DartKind::Segment { .. } => unreachable!(),
        };
        base_map.arc_face(arc % n0)
    }

    /// Copy index of a strand of the cover.
    pub fn copy_of_strand(&self, s: usize) -> usize {
        s / self.rotation.shift
    }
}

/// Glues `d` copies of the diagram along its cut.
pub fn sym_d(o: &OrbifoldDiagram, d: usize) -> Cover {
    let base = o.base();
    let n0 = base.n_points();
    let n = n0 * d;
    let nc = base.n_crossings();
    let id = |c: usize, r: usize| c * d + r;
    let mut strands = vec![Vec::new(); n];
    let mut tau = vec![0; n];
    for i in 0..n0 {
        let shifts = o.strand_shifts(i);
        for r in 0..d {
            let mut copy = r as i64;
            let list = &mut strands[i + r * n0];
            for (p, &c) in base.strand(i).iter().enumerate() {
                copy += shifts[p];
                list.push(id(c, copy.rem_euclid(d as i64) as usize));
            }
            copy += shifts[base.strand(i).len()];
            tau[i + r * n0] = base.tau()[i] + copy.rem_euclid(d as i64) as usize * n0;
        }
    }
    let mut chir = vec![Chirality::SecondFromLeft; nc * d];
    let mut first_seen = vec![false; nc * d];
    for (s, list) in strands.iter().enumerate() {
        for (p, &x) in list.iter().enumerate() {
            if first_seen[x] {
                continue;
            }
            first_seen[x] = true;
            let c = base.crossing(x / d);
            let is_a = c.a == Visit::new(s % n0, p);
            chir[x] = if is_a { c.chir } else { c.chir.flip() };
        }
    }
    let diagram = StrandDiagram::from_visits(n, tau, strands, &chir).expect("a cover of a valid diagram is valid");
    let rotation = Rotation { order: d, shift: n0, crossings: (0..nc * d).map(|x| (x / d) * d + (x % d + 1) % d).collect() };
    let lift = (0..nc * d).map(|x| (x / d, x % d)).collect();
    Cover { diagram, rotation, lift }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("{n} points cannot be divided into {s} rotation copies")]
    Indivisible { n: usize, s: usize },
    #[error("diagram is not invariant under rotation by {0} points")]
    NotSymmetric(usize),
    #[error("rotation fixes a crossing")]
    FixedCrossing,
    #[error("rotation fixes no face")]
    NoCentralFace,
    #[error("no dual path from the cone point to the boundary")]
    NoCut,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
}

/// Rotation by `n/s` points if it is a symmetry of the diagram.
pub fn find_rotation(p: &StrandDiagram, s: usize) -> Option<Rotation> {
    let n = p.n_points();
    if s < 2 || n % s != 0 {
        return None;
    }
    let n0 = n / s;
    let rot = |i: usize| (i + n0) % n;
    let mut image = vec![usize::MAX; p.n_crossings()];
    for i in 0..n {
        if p.tau()[rot(i)] != rot(p.tau()[i]) || p.strand(i).len() != p.strand(rot(i)).len() {
            return None;
        }
        for (pos, &c) in p.strand(i).iter().enumerate() {
            let target = p.strand(rot(i))[pos];
            if image[c] == usize::MAX {
                image[c] = target;
            } else if image[c] != target {
                return None;
            }
        }
    }
    for (c, x) in p.crossings().iter().enumerate() {
        let y = p.crossing(image[c]);
        let moved_a = Visit::new(rot(x.a.strand), x.a.pos);
        let chir = if y.a == moved_a { y.chir } else { y.chir.flip() };
        if chir != x.chir {
            return None;
        }
    }
    Some(Rotation { order: s, shift: n0, crossings: image })
}

/// Quotient of an `s`-symmetric diagram, with a cut along a shortest dual
/// path from the cone point to the arc between the last and first point.
pub fn quotient(p: &StrandDiagram, s: usize) -> Result<OrbifoldDiagram, QuotientError> {
    let n = p.n_points();
    if s < 2 || n % s != 0 {
        return Err(QuotientError::Indivisible { n, s });
    }
    let n0 = n / s;
    let rot = find_rotation(p, s).ok_or(QuotientError::NotSymmetric(n0))?;
    let mut orbit = vec![usize::MAX; p.n_crossings()];
    let mut reps = Vec::new();
    for i in 0..n0 {
        for &c in p.strand(i) {
            if orbit[c] != usize::MAX {
                continue;
            }
            let o = reps.len();
            reps.push(c);
            let mut x = c;
            for k in 0..s {
                if k > 0 && x == c {
                    return Err(QuotientError::FixedCrossing);
                }
                orbit[x] = o;
                x = rot.crossing(x);
            }
            if x != c {
                return Err(QuotientError::NotSymmetric(n0));
            }
        }
    }
    let strands: Vec<Vec<usize>> = (0..n0).map(|i| p.strand(i).iter().map(|&c| orbit[c]).collect()).collect();
    let tau: Vec<usize> = (0..n0).map(|i| p.tau()[i] % n0).collect();
    let mut chir = vec![Chirality::SecondFromLeft; reps.len()];
    let mut seen = vec![false; reps.len()];
    for (i, list) in strands.iter().enumerate() {
        for (pos, &o) in list.iter().enumerate() {
            if seen[o] {
                continue;
            }
            seen[o] = true;
            // the cover crossing at this visit is in the orbit; compare its
            // first visit with ours modulo the rotation
            let c = p.crossing(p.strand(i)[pos]);
            let is_a = c.a.strand % n0 == i && c.a.pos == pos;
            chir[o] = if is_a { c.chir } else { c.chir.flip() };
        }
    }
    let base = StrandDiagram::from_visits(n0, tau, strands, &chir)?;

    let cover_map = StrandMap::build(p)?;
    let centre = rot.fixed_face(&cover_map).ok_or(QuotientError::NoCentralFace)?;
    let base_map = StrandMap::build(&base)?;
    let omega = cover_map
        .face(centre)
        .border
        .iter()
        .find_map(|&d| match cover_map.kind(d) {
            DartKind::Segment { strand, seg, forward } => {
                let b = base_map.forward(strand % n0, seg);
                Some(base_map.face_of(if forward { b } else { b + 1 }))
            }
            DartKind::Arc { .. } => None,
        })
        .unwrap_or_else(|| base_map.arc_face(n0 - 1));
    let cut = shortest_cut(&base_map, omega, base_map.arc_face(n0 - 1)).ok_or(QuotientError::NoCut)?;
    Ok(OrbifoldDiagram::new(base, s, cut)?)
}

/// Breadth-first dual path between two faces, as cut crossings.
pub(crate) fn shortest_cut(map: &StrandMap, from: FaceId, to: FaceId) -> Option<Vec<CutCrossing>> {
    let mut prev: Vec<Option<(FaceId, CutCrossing)>> = vec![None; map.faces().len()];
    let mut seen = vec![false; map.faces().len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(f) = queue.pop_front() {
        if f == to {
            break;
        }
        for &d in &map.face(f).border {
            if let DartKind::Segment { strand, seg, forward } = map.kind(d) {
                let g = map.face_of(d ^ 1);
                if g == f || seen[g] {
                    continue;
                }
                seen[g] = true;
                let omega = if forward { Side::Left } else { Side::Right };
                prev[g] = Some((f, CutCrossing { strand, seg, omega }));
                queue.push_back(g);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut f = to;
    while let Some((g, r)) = prev[f] {
        path.push(r);
        f = g;
    }
    path.reverse();
    Some(path)
}

impl OrbifoldDiagram {
    /// Replaces the cut by a shortest dual path from the cone-point face.
    pub fn with_shortest_cut(&self) -> Result<OrbifoldDiagram, QuotientError> {
        let map = self.map();
        let cut = shortest_cut(&map, self.omega_face(&map), map.arc_face(self.n0() - 1)).ok_or(QuotientError::NoCut)?;
        Ok(OrbifoldDiagram::new(self.base().clone(), self.order(), cut)?)
    }
}
