use crate::orbifold::OrbifoldDiagram;
use std::collections::BTreeMap;
use thiserror::Error;
use strand_map::{loop_is_empty, meetings, self_crossings, validate_postnikov, MeetPoint, Violation};

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("strand {strand} between nodes {from} and {to} is not a closed curve")]
pub struct NotClosed {
    pub strand: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakViolation {
    /// One of the local axioms (1)-(3).
    Local(Violation),
    /// Two strands both run from `first` to `second` and the closed curve
    /// they form does not wind around the cone point.
    FlatDoubleCrossing { strands: (usize, usize), first: MeetPoint, second: MeetPoint },
    /// A loop with zero winding that is not empty.
    FlatLoop { strand: usize, label: usize },
}

impl WeakViolation {
    pub fn condition(&self) -> u8 {
        match self {
            WeakViolation::Local(v) => v.condition(),
            WeakViolation::FlatDoubleCrossing { .. } => 4,
            WeakViolation::FlatLoop { .. } => 5,
        }
    }
}

/// Winding numbers of self-intersection loops and of same-direction
/// double crossings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WindingReport {
    /// Per strand: each self-intersection (interior crossing or shared
    /// endpoint) with the winding of its loop.
    pub loops: Vec<Vec<(MeetPoint, i64)>>,
    /// Per unordered strand pair: each same-direction pair `(A, B)` with the
    /// winding of the curve along the first strand from A to B and back
    /// along the second.
    pub pairs: BTreeMap<(usize, usize), Vec<(MeetPoint, MeetPoint, i64)>>,
}

impl WindingReport {
    /// `S(γ)`: largest absolute loop winding, 0 without self-intersections.
    pub fn s(&self, strand: usize) -> i64 {
        self.loops[strand].iter().map(|(_, w)| w.abs()).max().unwrap_or(0)
    }

    /// `L(γ, γ')`: largest absolute pair winding, 0 if none.
    pub fn l(&self, x: usize, y: usize) -> i64 {
        let key = if x < y { (x, y) } else { (y, x) };
        self.pairs.get(&key).map(|v| v.iter().map(|t| t.2.abs()).max().unwrap_or(0)).unwrap_or(0)
    }

    /// Bound that the cone order must exceed.
    pub fn max_winding(&self) -> i64 {
        let s = (0..self.loops.len()).map(|i| self.s(i)).max().unwrap_or(0);
        let l = self.pairs.values().flatten().map(|t| t.2.abs()).max().unwrap_or(0);
        s.max(l)
    }
}

impl OrbifoldDiagram {
    pub fn windings(&self) -> WindingReport {
        let d = self.base();
        let n = d.n_points();
        let mut loops = vec![Vec::new(); n];
        for (s, q1, q2) in self_crossings(d) {
            let label = d.crossing(d.strand(s)[q1]).label;
            loops[s].push((MeetPoint::Crossing(label), self.path_winding(s, q1 + 1, q2 + 1)));
        }
        for (s, l) in loops.iter_mut().enumerate() {
            if d.tau()[s] == s {
                l.push((MeetPoint::Point(s), self.strand_winding(s)));
            }
        }
        let mut pairs = BTreeMap::new();
        for x in 0..n {
            for y in x + 1..n {
                let m = meetings(d, x, y);
                let mut found = Vec::new();
                for i in 0..m.len() {
                    for j in i + 1..m.len() {
                        let (a, b) = if m[i].1 < m[j].1 { (m[i], m[j]) } else { (m[j], m[i]) };
                        if a.2 < b.2 {
                            let w = self.path_winding(x, a.1, b.1) - self.path_winding(y, a.2, b.2);
                            found.push((a.0, b.0, w));
                        }
                    }
                }
                if !found.is_empty() {
                    pairs.insert((x, y), found);
                }
            }
        }
        WindingReport { loops, pairs }
    }

    /// Axioms of a weak orbifold diagram; empty when all hold.
    pub fn validate_weak(&self) -> Vec<WeakViolation> {
        let d = self.base();
        let mut out: Vec<WeakViolation> = validate_postnikov(d)
            .violations
            .into_iter()
            .filter(|v| v.condition() <= 3)
            .map(WeakViolation::Local)
            .collect();
        let report = self.windings();
        for (&(x, y), list) in &report.pairs {
            for &(a, b, w) in list {
                if w == 0 {
                    out.push(WeakViolation::FlatDoubleCrossing { strands: (x, y), first: a, second: b });
                }
            }
        }
        let map = self.map();
        for (s, q1, q2) in self_crossings(d) {
            if self.path_winding(s, q1 + 1, q2 + 1) == 0 && !loop_is_empty(&map, s, q1, q2) {
                out.push(WeakViolation::FlatLoop { strand: s, label: d.crossing(d.strand(s)[q1]).label });
            }
        }
        out
    }

    /// Whether this is a weak orbifold diagram whose order exceeds every
    /// `S` and `L`, together with the largest of those.
    pub fn is_orbifold(&self) -> (bool, i64) {
        let threshold = self.windings().max_winding();
        (self.validate_weak().is_empty() && (self.order() as i64) > threshold, threshold)
    }

    /// Winding of the closed piece of `strand` between nodes `from < to`
    /// (node 0 is the start point, node k the k-th crossing, the last node
    /// the end point). The piece must start and end at the same place.
    pub fn winding_closed(&self, strand: usize, from: usize, to: usize) -> Result<i64, NotClosed> {
        let d = self.base();
        let list = d.strand(strand);
        let last = list.len() + 1;
        let closed = from < to
            && to <= last
            && if from == 0 && to == last {
                d.tau()[strand] == strand
            } else if from >= 1 && to < last {
                list[from - 1] == list[to - 1]
            } else {
                false
            };
        if closed {
            Ok(self.path_winding(strand, from, to))
        } else {
            Err(NotClosed { strand, from, to })
        }
    }

    /// `(k, n, w)` when every strand is closed and winds `w` or `w - d`
    /// times for one `0 < w < d`; then `n = n0 d` and `k = n0 w`.
    pub fn grassmannian_type(&self) -> Option<(usize, usize, usize)> {
        let n0 = self.n0();
        let d = self.order() as i64;
        if (0..n0).any(|i| self.base().tau()[i] != i) {
            return None;
        }
        let w: Vec<i64> = (0..n0).map(|i| self.strand_winding(i)).collect();
        (1..d)
            .find(|&wp| w.iter().all(|&x| x == wp || x == wp - d))
            .map(|wp| (n0 * wp as usize, n0 * d as usize, wp as usize))
    }
}
