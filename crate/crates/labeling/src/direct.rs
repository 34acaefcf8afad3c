use crate::{map_range, FaceLabels, LabelError, Subset};
use orbifold_ops::{cut_sign, OrbifoldDiagram};
use strand_map::{Arrangement, DartKind, FaceId, Side};

/// Labels computed on the orbifold itself from the cut.
#[derive(Clone, Debug)]
pub struct DirectLabels {
    pub n0: usize,
    pub n: usize,
    /// Per strand and segment, the labels of its pieces in strand order
    /// (two pieces when the cut crosses the segment).
    pub segment_labels: Vec<Vec<Vec<usize>>>,
    /// Values of `1..n` carried by no segment.
    pub missing: Vec<usize>,
    /// Missing values whose strand has the cone point on its left.
    pub added: Vec<usize>,
    /// Per face; a face split by the cut gets the label of its
    /// counterclockwise half.
    pub labels: FaceLabels,
    /// Faces split by the cut with the labels of their clockwise and
    /// counterclockwise halves.
    pub halves: Vec<(FaceId, Subset, Subset)>,
}

/// Whether the cone point lies on the left of every lift of strand `j0`.
pub fn omega_left_of(o: &OrbifoldDiagram, j0: usize) -> bool {
    let n = (o.n0() * o.order()) as i64;
    let disp = o.base().tau()[j0] as i64 - j0 as i64 + o.strand_winding(j0) * o.n0() as i64;
    if disp == 0 {
        o.map().arrangement(j0) == Arrangement::OutgoingClockwise
    } else {
        (-n..0).contains(&disp)
    }
}

#[derive(Clone, Copy, Default)]
struct Piece {
    label: usize,
    left: usize,
    right: usize,
}

pub fn orbifold_labels_direct(o: &OrbifoldDiagram) -> Result<DirectLabels, LabelError> {
    let map = o.map();
    let base = o.base();
    let n0 = o.n0();
    let n = n0 * o.order();
    let cut = o.cut();

    let mut cut_faces = vec![o.omega_face(&map)];
    cut_faces.extend(cut.iter().map(|r| map.face_on(r.strand, r.seg, r.omega.flip())));
    let mut position = vec![usize::MAX; map.faces().len()];
    for (t, &f) in cut_faces.iter().enumerate() {
        if position[f] != usize::MAX {
            return Err(LabelError::CutNotSimple(f));
        }
        position[f] = t;
    }

    let label = |i: usize, c: i64| (i as i64 - c * n0 as i64).rem_euclid(n as i64) as usize + 1;
    let mut crossed = vec![None; map.n_segments_total()];
    for r in cut {
        crossed[map.segment_index(r.strand, r.seg)] = Some(cut_sign(r.omega));
    }
    let mut pieces = Vec::new();
    // first piece id of each segment
    let mut first_piece = vec![0; map.n_segments_total()];
    let mut segment_labels = Vec::with_capacity(n0);
    for i in 0..n0 {
        let mut c = 0;
        let mut per_seg = Vec::with_capacity(base.n_segments(i));
        for g in 0..base.n_segments(i) {
            let idx = map.segment_index(i, g);
            first_piece[idx] = pieces.len();
            let mut labels = vec![label(i, c)];
            if let Some(sign) = crossed[idx] {
                c += sign;
                labels.push(label(i, c));
            }
            pieces.extend(labels.iter().map(|&l| Piece { label: l, ..Piece::default() }));
            per_seg.push(labels);
        }
        segment_labels.push(per_seg);
    }

    let m = cut.len();
    let mut node_of_face = vec![usize::MAX; map.faces().len()];
    let mut n_nodes = 0;
    for f in map.faces() {
        node_of_face[f.id] = n_nodes;
        n_nodes += if position[f.id] >= 1 && position[f.id] != usize::MAX { 2 } else { 1 };
    }
    // a split face has its clockwise half at node_of_face and the other one after it
    for f in map.faces() {
        let t = position[f.id];
        let split = t != usize::MAX && t >= 1;
        let (pa, pb) = if split {
            let r = &cut[t - 1];
            let entry = if r.omega == Side::Right { map.forward(r.strand, r.seg) } else { map.backward(r.strand, r.seg) };
            let exit = if t < m {
                let r = &cut[t];
                if r.omega == Side::Left {
                    map.forward(r.strand, r.seg)
                } else {
                    map.backward(r.strand, r.seg)
                }
            } else {
                2 * (map.n_segments_total() + n0 - 1) + 1
            };
            let at = |d| f.border.iter().position(|&x| x == d).expect("cut dart lies on its face");
            (at(entry), at(exit))
        } else {
            (0, 0)
        };
        let len = f.border.len();
        let cw = node_of_face[f.id];
        let ccw = cw + 1;
        for (k, &dart) in f.border.iter().enumerate() {
            let DartKind::Segment { strand, seg, forward } = map.kind(dart) else { continue };
            let idx = map.segment_index(strand, seg);
            let p0 = first_piece[idx];
            let parts: Vec<(usize, usize)> = if crossed[idx].is_none() {
                let node = if !split || (k + len - pa) % len < (pb + len - pa) % len { cw } else { ccw };
                vec![(p0, node)]
            } else if !split {
                vec![(p0, cw), (p0 + 1, cw)]
            } else {
                // tail and head of the dart in face order
                let (tail, head) = if forward { (p0, p0 + 1) } else { (p0 + 1, p0) };
                if k == pa {
                    vec![(tail, ccw), (head, cw)]
                } else {
                    vec![(tail, cw), (head, ccw)]
                }
            };
            for (p, node) in parts {
                if forward {
                    pieces[p].left = node;
                } else {
                    pieces[p].right = node;
                }
            }
        }
    }

    let mut present = vec![false; n + 1];
    for p in &pieces {
        present[p.label] = true;
    }
    let missing: Vec<usize> = (1..=n).filter(|&j| !present[j]).collect();
    let added: Vec<usize> = missing.iter().copied().filter(|&j| omega_left_of(o, (j - 1) % n0)).collect();

    let sides = map_range(n, |l0| {
        let l = l0 + 1;
        if !present[l] {
            return Ok(None);
        }
        let mut adj = vec![Vec::new(); n_nodes];
        for p in pieces.iter().filter(|p| p.label != l) {
            adj[p.left].push(p.right);
            adj[p.right].push(p.left);
        }
        let mut seen = vec![false; n_nodes];
        let mut stack: Vec<usize> = pieces.iter().filter(|p| p.label == l).map(|p| p.left).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if pieces.iter().any(|p| p.label == l && seen[p.right]) {
            return Err(LabelError::Inconsistent(l));
        }
        Ok(Some(seen))
    });
    let sides: Vec<Option<Vec<bool>>> = sides.into_iter().collect::<Result<_, _>>()?;
    let node_label = |node: usize| {
        Subset::new(
            (1..=n)
                .filter(|&l| sides[l - 1].as_ref().is_some_and(|s| s[node]))
                .chain(added.iter().copied()),
        )
    };

    let mut labels = Vec::with_capacity(map.faces().len());
    let mut halves = Vec::new();
    for f in map.faces() {
        if !f.kind.is_alternating_like() {
            labels.push(None);
            continue;
        }
        let node = node_of_face[f.id];
        let t = position[f.id];
        if t != usize::MAX && t >= 1 {
            let (a, b) = (node_label(node), node_label(node + 1));
            labels.push(Some(b.clone()));
            halves.push((f.id, a, b));
        } else {
            labels.push(Some(node_label(node)));
        }
    }
    Ok(DirectLabels { n0, n, segment_labels, missing, added, labels: FaceLabels::from_vec(labels), halves })
}
