use crate::quiver::{Arrow, Cycle, Quiver, Site, Vertex, VertexLabel};
use crate::{Cyc, Potential, Term};
use labeling::{orbifold_labels_direct, postnikov_labels, LabelClass, LabelError};
use num_rational::BigRational;
use orbifold_ops::OrbifoldDiagram;
use strand_map::{find_move, validate_postnikov, Arrangement, DartKind, FaceId, FaceKind, MapError, StrandDiagram, StrandMap};
use thiserror::Error;

/// A quiver with potential together with the size of the diagram it came
/// from: `n` marked points on the cover, `n0` on the diagram itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
    pub n: usize,
    pub n0: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QpError {
    #[error("diagram fails Postnikov conditions {0:?}")]
    Invalid(Vec<u8>),
    #[error("diagram is not reduced")]
    NotReduced,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("the arrows around face {0} do not close up")]
    BrokenCycle(FaceId),
    #[error("exponent {e} does not give a primitive {d}-th root of unity")]
    NotPrimitive { e: i64, d: usize },
}

/// Crossing or marked point at the head of a dart.
fn head(map: &StrandMap, d: &StrandDiagram, dart: usize) -> Site {
    match map.kind(dart) {
        DartKind::Segment { strand, seg, forward: true } => match d.strand(strand).get(seg) {
            Some(&c) => Site::Crossing(c),
            None => Site::Point(d.tau()[strand]),
        },
        DartKind::Segment { strand, seg, forward: false } => match seg {
            0 => Site::Point(strand),
            _ => Site::Crossing(d.strand(strand)[seg - 1]),
        },
        DartKind::Arc { .. } => unreachable!("arcs do not bound cyclic faces"),
    }
}

/// Source and target region of the arrow through a site, if the site
/// separates two regions that way.
fn site_faces(map: &StrandMap, d: &StrandDiagram, site: Site) -> Option<(FaceId, FaceId)> {
    match site {
        Site::Crossing(c) => {
            let r = map.crossing_rotation(c);
            let backward = |x: usize| matches!(map.kind(x), DartKind::Segment { forward: false, .. });
            let corner = |want: bool| {
                (0..4).find(|&i| backward(r[i]) == want && backward(r[(i + 1) % 4]) == want).map(|i| map.face_of(r[(i + 1) % 4]))
            };
            Some((corner(true)?, corner(false)?))
        }
        Site::Point(p) => {
            let n = d.n_points();
            let before = map.arc_face((p + n - 1) % n);
            let incoming = d.tau_inv()[p];
            let in_face = map.face_of(map.backward(incoming, d.n_segments(incoming) - 1));
            let out_face = map.face_of(map.forward(p, 0));
            match map.arrangement(p) {
                Arrangement::OutgoingClockwise => Some((before, out_face)),
                Arrangement::IncomingClockwise => Some((in_face, before)),
            }
        }
    }
}

/// Sites around a cyclic face in path order, with the face's sign.
fn face_cycle(map: &StrandMap, d: &StrandDiagram, f: FaceId) -> Result<(Vec<(Site, FaceId, FaceId)>, i8), QpError> {
    let border = &map.face(f).border;
    let forward = matches!(map.kind(border[0]), DartKind::Segment { forward: true, .. });
    let mut sites = Vec::with_capacity(border.len());
    for &dart in border {
        let s = head(map, d, dart);
        let (a, b) = site_faces(map, d, s).ok_or(QpError::BrokenCycle(f))?;
        sites.push((s, a, b));
    }
    let chains = |v: &[(Site, FaceId, FaceId)]| (0..v.len()).all(|i| v[i].2 == v[(i + 1) % v.len()].1);
    if !chains(&sites) {
        sites.reverse();
        if !chains(&sites) {
            return Err(QpError::BrokenCycle(f));
        }
    }
    Ok((sites, if forward { 1 } else { -1 }))
}

fn all_sites(d: &StrandDiagram) -> impl Iterator<Item = Site> {
    (0..d.n_crossings()).map(Site::Crossing).chain((0..d.n_points()).map(Site::Point))
}

/// Quiver with potential of a reduced Postnikov diagram.
pub fn qp_of_postnikov(d: &StrandDiagram) -> Result<Qp, QpError> {
    let report = validate_postnikov(d);
    if !report.is_valid() {
        let mut v: Vec<u8> = report.violations.iter().map(|v| v.condition()).collect();
        v.sort_unstable();
        v.dedup();
        return Err(QpError::Invalid(v));
    }
    let map = StrandMap::build(d)?;
    if find_move(d, &map, |_| false).is_some() {
        return Err(QpError::NotReduced);
    }
    let labels = postnikov_labels(d)?;
    let mut q = Quiver::default();
    let mut vertex_of = vec![usize::MAX; map.faces().len()];
    for f in map.faces() {
        if let Ok(l) = labels.get(f.id) {
            vertex_of[f.id] = q.vertices.len();
            q.vertices.push(Vertex {
                face: f.id,
                label: VertexLabel::Subset(l.clone()),
                frozen: f.kind == FaceKind::Boundary,
                copy: None,
            });
        }
    }
    let mut arrow_of = std::collections::HashMap::new();
    for site in all_sites(d) {
        if let Some((a, b)) = site_faces(&map, d, site) {
            if vertex_of[a] != usize::MAX && vertex_of[b] != usize::MAX {
                arrow_of.insert(site, q.arrows.len());
                q.arrows.push(Arrow { source: vertex_of[a], target: vertex_of[b], site, copy: None });
            }
        }
    }
    let mut terms = Vec::new();
    for f in map.faces().iter().filter(|f| f.kind == FaceKind::Cyclic) {
        let (sites, sign) = face_cycle(&map, d, f.id)?;
        let arrows = sites.iter().map(|s| arrow_of.get(&s.0).copied().ok_or(QpError::BrokenCycle(f.id))).collect::<Result<_, _>>()?;
        terms.push(Term { coeff: Cyc::int(1, sign as i64), cycle: q.cycles.len(), power: 1 });
        q.cycles.push(Cycle { face: f.id, arrows, sign, copy: None });
    }
    let n = d.n_points();
    Ok(Qp { quiver: q, potential: Potential { order: 1, terms }, n, n0: n })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Quiver with potential of an orbifold diagram. `zeta_exp` selects the
/// root of unity `z^zeta_exp` weighting the distinguished orbit of cycles
/// around a split central region.
pub fn qp_of_orbifold(o: &OrbifoldDiagram, zeta_exp: i64) -> Result<Qp, QpError> {
    let d = o.order();
    if gcd(zeta_exp, d as i64) != 1 {
        return Err(QpError::NotPrimitive { e: zeta_exp, d });
    }
    let base = o.base();
    let map = o.map();
    let n0 = o.n0();
    let direct = orbifold_labels_direct(o)?;
    let omega = o.omega_face(&map);
    let split = map.face(omega).kind.is_alternating_like();

    let mut q = Quiver::default();
    let mut vertices_of: Vec<Vec<usize>> = vec![Vec::new(); map.faces().len()];
    for f in map.faces() {
        let Ok(l) = direct.labels.get(f.id) else { continue };
        let label = VertexLabel::Class(LabelClass::of(l, n0, d));
        let copies: Vec<Option<usize>> = if split && f.id == omega { (1..=d).map(Some).collect() } else { vec![None] };
        for copy in copies {
            vertices_of[f.id].push(q.vertices.len());
            q.vertices.push(Vertex { face: f.id, label: label.clone(), frozen: f.kind == FaceKind::Boundary, copy });
        }
    }
    let mut arrows_of = std::collections::HashMap::new();
    for site in all_sites(base) {
        let Some((a, b)) = site_faces(&map, base, site) else { continue };
        let (va, vb) = (&vertices_of[a], &vertices_of[b]);
        if va.is_empty() || vb.is_empty() || (split && a == omega && b == omega) {
            continue;
        }
        let mut ids = Vec::new();
        if va.len() > 1 || vb.len() > 1 {
            for i in 0..d {
                let s = va[i.min(va.len() - 1)];
                let t = vb[i.min(vb.len() - 1)];
                ids.push(q.arrows.len());
                q.arrows.push(Arrow { source: s, target: t, site, copy: Some(i + 1) });
            }
        } else {
            ids.push(q.arrows.len());
            q.arrows.push(Arrow { source: va[0], target: vb[0], site, copy: None });
        }
        arrows_of.insert(site, ids);
    }

    let distinguished = o.cut().first().map(|r| map.face_on(r.strand, r.seg, r.omega.flip()));
    let mut orbits: Vec<(FaceId, Vec<usize>, i8)> = Vec::new();
    let mut terms = Vec::new();
    for f in map.faces().iter().filter(|f| f.kind == FaceKind::Cyclic) {
        let (sites, sign) = face_cycle(&map, base, f.id)?;
        let ids: Vec<&Vec<usize>> =
            sites.iter().map(|s| arrows_of.get(&s.0).ok_or(QpError::BrokenCycle(f.id))).collect::<Result<_, _>>()?;
        if ids.iter().any(|v| v.len() > 1) {
            let mut copies = Vec::new();
            for i in 0..d {
                copies.push(q.cycles.len());
                let arrows = ids.iter().map(|v| v[i.min(v.len() - 1)]).collect();
                q.cycles.push(Cycle { face: f.id, arrows, sign, copy: Some(i + 1) });
            }
            orbits.push((f.id, copies, sign));
        } else {
            let arrows: Vec<usize> = ids.iter().map(|v| v[0]).collect();
            let power = if f.id == omega { d } else { 1 };
            let coeff = if power == 1 { Cyc::int(d, sign as i64) } else { Cyc::frac(d, sign as i64, d as i64) };
            terms.push(Term { coeff, cycle: q.cycles.len(), power });
            q.cycles.push(Cycle { face: f.id, arrows, sign, copy: None });
        }
    }
    let r = orbits.iter().position(|o| Some(o.0) == distinguished).unwrap_or(0);
    for (j, (_, copies, sign)) in orbits.iter().enumerate() {
        for (i, &c) in copies.iter().enumerate() {
            let s = Cyc::int(d, *sign as i64);
            let coeff = if j == r { &Cyc::zeta(d, zeta_exp * (i as i64 + 1)) * &s } else { s };
            terms.push(Term { coeff, cycle: c, power: 1 });
        }
    }
    Ok(Qp { quiver: q, potential: Potential { order: d, terms }, n: n0 * d, n0 })
}

impl Qp {
    /// Positive arrow weights making every potential term homogeneous of
    /// degree `n`, read from the label exchange along each arrow. When a
    /// class offers several exchanges the consistent one is searched for.
    pub fn grading(&self) -> Option<Vec<u32>> {
        let n = self.n as i64;
        let exchanges: Vec<Vec<(i64, i64)>> = self
            .quiver
            .arrows
            .iter()
            .map(|a| {
                let i = self.quiver.vertices[a.source].label.representative();
                self.quiver.vertices[a.target]
                    .label
                    .members()
                    .into_iter()
                    .filter_map(|j| {
                        let out: Vec<usize> = i.elements().iter().filter(|x| !j.contains(**x)).copied().collect();
                        let inn: Vec<usize> = j.elements().iter().filter(|x| !i.contains(**x)).copied().collect();
                        (out.len() == 1 && inn.len() == 1).then(|| (out[0] as i64, inn[0] as i64))
                    })
                    .collect()
            })
            .collect();
        if exchanges.iter().any(Vec::is_empty) {
            return None;
        }
        [1i64, -1].into_iter().find_map(|dir| {
            let candidates: Vec<Vec<u32>> = exchanges
                .iter()
                .map(|v| {
                    let mut w: Vec<u32> = v.iter().map(|&(x, y)| (dir * (y - x)).rem_euclid(n) as u32).filter(|&w| w > 0).collect();
                    w.sort_unstable();
                    w.dedup();
                    w
                })
                .collect();
            self.search_weights(&candidates)
        })
    }

    fn search_weights(&self, candidates: &[Vec<u32>]) -> Option<Vec<u32>> {
        let terms: Vec<(&[usize], usize)> =
            self.potential.terms.iter().map(|t| (&self.quiver.cycles[t.cycle].arrows[..], t.power)).collect();
        let mut w = vec![0u32; candidates.len()];
        fn go(k: usize, w: &mut Vec<u32>, cand: &[Vec<u32>], terms: &[(&[usize], usize)], n: usize) -> bool {
            let consistent = terms.iter().all(|(arrows, power)| {
                let mut sum = 0usize;
                let mut complete = true;
                for &a in arrows.iter() {
                    if a < k {
                        sum += w[a] as usize;
                    } else {
                        complete = false;
                    }
                }
                if complete {
                    sum * power == n
                } else {
                    sum * power < n
                }
            });
            if !consistent {
                return false;
            }
            if k == cand.len() {
                return true;
            }
            for &c in &cand[k] {
                w[k] = c;
                if go(k + 1, w, cand, terms, n) {
                    return true;
                }
            }
            false
        }
        go(0, &mut w, candidates, &terms, self.n).then_some(w)
    }

    /// The potential as a readable sum, terms in cycle order.
    pub fn potential_string(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.potential.terms.iter().enumerate() {
            let word: Vec<String> = self.quiver.cycles[t.cycle].arrows.iter().map(|&a| self.quiver.arrow_name(a)).collect();
            let power = if t.power > 1 { format!("^{}", t.power) } else { String::new() };
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})({}){}", t.coeff, word.join(" "), power));
        }
        out
    }
}

/// Rational number helper for callers comparing coefficients.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
