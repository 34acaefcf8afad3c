use crate::diagram::StrandDiagram;
use crate::map::{FaceId, StrandMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Two strands crossing twice around an empty bigon are pulled apart.
    Bigon { crossings: (usize, usize), strands: (usize, usize) },
    /// An empty loop of a single strand is pulled straight.
    Loop { crossing: usize, strand: usize },
}

/// Old segment index to new segment index, per strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentRemap(pub Vec<Vec<usize>>);

impl SegmentRemap {
    pub fn get(&self, strand: usize, seg: usize) -> usize {
        self.0[strand][seg]
    }
}

/// First applicable move in face order whose face is not `forbidden`,
/// together with the crossing indices it removes.
pub fn find_move(
    d: &StrandDiagram,
    map: &StrandMap,
    forbidden: impl Fn(FaceId) -> bool,
) -> Option<(Move, Vec<usize>)> {
    let ends = |s: usize, g: usize| -> Option<(usize, usize)> {
        let list = d.strand(s);
        (g >= 1 && g < list.len()).then(|| (list[g - 1], list[g]))
    };
    for face in map.faces() {
        if forbidden(face.id) {
            continue;
        }
        let segs: Vec<_> = map.segments_of_face(face.id).collect();
        if segs.len() != face.border.len() {
            continue;
        }
        match segs.as_slice() {
            [(s, g, _)] => {
                if let Some((c1, c2)) = ends(*s, *g) {
                    if c1 == c2 {
                        let mv = Move::Loop { crossing: d.crossing(c1).label, strand: *s };
                        return Some((mv, vec![c1]));
                    }
                }
            }
            [(s1, g1, _), (s2, g2, _)] if s1 != s2 => {
                if let (Some((a1, b1)), Some((a2, b2))) = (ends(*s1, *g1), ends(*s2, *g2)) {
                    let same = (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2);
                    if a1 != b1 && same {
                        let (x, y) = if s1 < s2 { (*s1, *s2) } else { (*s2, *s1) };
                        let mv = Move::Bigon {
                            crossings: (d.crossing(a1).label, d.crossing(b1).label),
                            strands: (x, y),
                        };
                        return Some((mv, vec![a1, b1]));
                    }
                }
            }
            _ => {}
        }
    }
    None
}

/// Removes the given crossings and reports how segments renumber.
pub fn apply_move(d: &StrandDiagram, removed: &[usize]) -> (StrandDiagram, SegmentRemap) {
    let remap = (0..d.n_points())
        .map(|s| {
            let mut kept = 0;
            let mut row = Vec::with_capacity(d.n_segments(s));
            row.push(0);
            for &c in d.strand(s) {
                if !removed.contains(&c) {
                    kept += 1;
                }
                row.push(kept);
            }
            row
        })
        .collect();
    (d.without_crossings(removed), SegmentRemap(remap))
}

/// Applies bigon and loop moves until none is left.
pub fn reduce(d: &StrandDiagram) -> (StrandDiagram, Vec<Move>) {
    let mut cur = d.clone();
    let mut log = Vec::new();
    loop {
        let Ok(map) = StrandMap::build(&cur) else { break };
        let Some((mv, removed)) = find_move(&cur, &map, |_| false) else { break };
        cur = apply_move(&cur, &removed).0;
        log.push(mv);
    }
    (cur, log)
}
