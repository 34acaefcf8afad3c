use crate::presentation::{Presentation, Word};
use crate::truncated::TruncatedPathAlgebra;
use crate::AlgebraError;
use orbifold_ops::Rotation;
use quiver_potential::{Cyc, Qp, Site};
use std::collections::{BTreeMap, HashMap};
use strand_map::StrandMap;

/// A cyclic group acting on a quiver through a generator that permutes
/// vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    pub order: usize,
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl CyclicAction {
    /// Checks that the generator is a quiver automorphism of the given
    /// order.
    pub fn validate(&self, p: &Presentation) -> Result<(), AlgebraError> {
        let q = &p.quiver;
        if self.vertices.len() != q.n_vertices || self.arrows.len() != q.arrows.len() {
            return Err(AlgebraError::NotAutomorphism);
        }
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            if q.arrows[self.arrows[a]] != (self.vertices[s], self.vertices[t]) {
                return Err(AlgebraError::NotAutomorphism);
            }
        }
        let mut v: Vec<usize> = (0..q.n_vertices).collect();
        for _ in 0..self.order {
            v = v.iter().map(|&x| self.vertices[x]).collect();
        }
        if v.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(AlgebraError::WrongOrder);
        }
        Ok(())
    }

    pub fn apply_word(&self, w: &[u32]) -> Word {
        w.iter().map(|&a| self.arrows[a as usize] as u32).collect()
    }

    /// Whether the image of every relation is, up to sign, a relation.
    pub fn permutes_relations(&self, p: &Presentation) -> bool {
        let key = |terms: &[(Word, Cyc)]| -> BTreeMap<Word, Cyc> { terms.iter().cloned().collect() };
        let known: Vec<BTreeMap<Word, Cyc>> = p.relations.iter().map(|r| key(&r.terms)).collect();
        p.relations.iter().all(|r| {
            let image: BTreeMap<Word, Cyc> = r.terms.iter().map(|(w, c)| (self.apply_word(w), c.clone())).collect();
            let negated: BTreeMap<Word, Cyc> = image.iter().map(|(w, c)| (w.clone(), -c.clone())).collect();
            known.iter().any(|k| *k == image || *k == negated)
        })
    }

    /// Vertex orbits, each listed from its smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            if seen[v] {
                continue;
            }
            let mut orbit = vec![v];
            seen[v] = true;
            let mut x = self.vertices[v];
            while x != v {
                seen[x] = true;
                orbit.push(x);
                x = self.vertices[x];
            }
            out.push(orbit);
        }
        out
    }
}

/// The deck rotation of a cover acting on the quiver of its QP.
pub fn rotation_action(qp: &Qp, map: &StrandMap, rotation: &Rotation) -> Result<CyclicAction, AlgebraError> {
    let face_image = |f: usize| map.face_of(rotation.dart(map, map.face(f).border[0]));
    let by_face: HashMap<usize, usize> = qp.quiver.vertices.iter().enumerate().map(|(i, v)| (v.face, i)).collect();
    let vertices: Vec<usize> = qp
        .quiver
        .vertices
        .iter()
        .map(|v| by_face.get(&face_image(v.face)).copied().ok_or(AlgebraError::NotAutomorphism))
        .collect::<Result<_, _>>()?;
    let n = map.n_points();
    let by_site: HashMap<(usize, usize, Site), usize> =
        qp.quiver.arrows.iter().enumerate().map(|(i, a)| ((a.source, a.target, a.site), i)).collect();
    let arrows = qp
        .quiver
        .arrows
        .iter()
        .map(|a| {
            let site = match a.site {
                Site::Crossing(c) => Site::Crossing(rotation.crossing(c)),
                Site::Point(p) => Site::Point((p + rotation.shift) % n),
            };
            by_site.get(&(vertices[a.source], vertices[a.target], site)).copied().ok_or(AlgebraError::NotAutomorphism)
        })
        .collect::<Result<_, _>>()?;
    Ok(CyclicAction { order: rotation.order, vertices, arrows })
}

/// Filtered dimensions (`j = 0..=m`) of the basic idempotent subalgebra of
/// the skew group algebra `A * G`. One idempotent is kept per free vertex
/// orbit; a fixed vertex splits into one idempotent per character of `G`.
pub fn skew_basic_dimensions(a: &TruncatedPathAlgebra, g: &CyclicAction) -> Vec<usize> {
    let d = g.order;
    let orbits = g.orbits();
    let free: Vec<&Vec<usize>> = orbits.iter().filter(|o| o.len() == d).collect();
    let fixed: Vec<usize> = orbits.iter().filter(|o| o.len() == 1 && d > 1).map(|o| o[0]).collect();
    (0..=a.max_len)
        .map(|j| {
            let mut total = 0;
            for u in &free {
                for w in &free {
                    total += w.iter().map(|&x| a.block_dim(u[0], x, j)).sum::<usize>();
                }
                for &f in &fixed {
                    total += d * (a.block_dim(u[0], f, j) + a.block_dim(f, u[0], j));
                }
            }
            for &f in &fixed {
                for &h in &fixed {
                    total += d * a.block_dim(f, h, j);
                }
            }
            total
        })
        .collect()
}
