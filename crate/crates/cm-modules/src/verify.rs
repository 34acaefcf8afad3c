use crate::end::{Element, EndAlgebra, Span};
use crate::hom::{hom_space, HomMap};
use crate::module::{class_module, rank_one, unrolled_vertex, FiltModule};
use crate::ModuleError;
use labeling::Subset;
use orbifold_ops::OrbifoldDiagram;
use path_algebra::{Echelon, Presentation, TruncatedPathAlgebra};
use quiver_potential::{qp_of_orbifold, Cyc, Qp, QpError, VertexLabel};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("relation {relation} has no consistent unit gauge")]
    GaugeInconsistent { relation: usize },
    #[error("arrow {arrow} has no nonzero image")]
    ZeroArrow { arrow: usize },
    #[error("arrows and idempotents span {found} of {expected} dimensions")]
    GenerationGap { expected: usize, found: usize },
    #[error("filtered dimension {j}: algebra has {expected}, endomorphisms give {found}")]
    DimensionMismatch { j: usize, expected: usize, found: usize },
    #[error("truncation {n} is too small for path length {m}")]
    TruncationTooSmall { m: usize, n: usize },
    #[error("quiver has no grading compatible with its potential")]
    Ungraded,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Qp(#[from] QpError),
}

/// The summands of `T` for a quiver: one module per distinct label, and an
/// idempotent of the endomorphism algebra per quiver vertex.
#[derive(Clone, Debug)]
pub struct TData {
    pub end: EndAlgebra,
    pub vertex_module: Vec<usize>,
    /// Representative label of each module.
    pub labels: Vec<Subset>,
    pub n0: usize,
    pub n: usize,
    /// Modules whose label is fixed by the rotation, with their shift
    /// automorphism.
    pub shifts: BTreeMap<usize, Element>,
}

/// The label modules of a QP's vertices: rank-one modules for subset
/// labels, class modules for label classes.
pub fn build_t(qp: &Qp, truncation: usize) -> Result<TData, ModuleError> {
    let mut keys: Vec<Subset> = Vec::new();
    let mut modules: Vec<FiltModule> = Vec::new();
    let mut vertex_module = Vec::new();
    let mut fixed = Vec::new();
    let n0 = match qp.quiver.vertices.first().map(|v| &v.label) {
        Some(VertexLabel::Class(c)) => c.n0(),
        _ => qp.n,
    };
    for v in &qp.quiver.vertices {
        let rep = v.label.representative().clone();
        let canon = match &v.label {
            VertexLabel::Subset(s) => s.clone(),
            VertexLabel::Class(c) => c.canonical().clone(),
        };
        let idx = match keys.iter().position(|k| *k == canon) {
            Some(i) => i,
            None => {
                let m = match &v.label {
                    VertexLabel::Subset(s) => rank_one(s, s.len(), qp.n, truncation)?,
                    VertexLabel::Class(c) => {
                        if c.size() == 1 {
                            fixed.push(modules.len());
                        }
                        class_module(c, rep.len(), &rep, truncation)?
                    }
                };
                keys.push(canon);
                modules.push(m);
                modules.len() - 1
            }
        };
        vertex_module.push(idx);
    }
    let end = EndAlgebra::new(modules)?;
    let mut shifts = BTreeMap::new();
    for u in fixed {
        let m = &end.modules[u];
        let d = m.rank(0);
        let blocks = (0..m.n_vertices()).map(|v| (0..m.rank(v)).map(|l| (((l + 1) % d, l), Cyc::one(1))).collect()).collect();
        shifts.insert(u, end.element(u, u, &HomMap { degree: 0, blocks })?);
    }
    Ok(TData { end, vertex_module, labels: keys, n0, n: qp.n, shifts })
}

impl TData {
    /// The map `M_u -> M_v` of the given degree induced by a rank-one map
    /// `L_I -> L_J'`, where `I` represents `M_u` and `J'` runs over the
    /// rotations of the label of `M_v`; single exchanges are preferred.
    pub fn label_map(&self, u: usize, v: usize, degree: i64) -> Result<Option<HomMap>, ModuleError> {
        let (i, j) = (&self.labels[u], &self.labels[v]);
        let (k, n, n0) = (i.len(), self.n, self.n0);
        let d = n / n0;
        let trunc = self.end.truncation;
        let source = rank_one(i, k, n, trunc)?;
        let mut best: Option<(bool, usize, HomMap)> = None;
        for g in 0..d {
            let target = j.shifted(g * n0, n);
            let h = hom_space(&source, &rank_one(&target, k, n, trunc)?)?;
            let Some(f) = h.generators.iter().find(|f| f.degree == degree) else { continue };
            let exchange = i.symmetric_difference(&target).len() == 2;
            if best.as_ref().is_none_or(|b| exchange && !b.0) {
                best = Some((exchange, g, f.clone()));
            }
        }
        let Some((_, g, f)) = best else { return Ok(None) };
        if d == 1 {
            return Ok(Some(f));
        }
        let shift = (d - g) % d;
        let blocks = (0..n0)
            .map(|v| {
                (0..d)
                    .filter_map(|l| {
                        f.blocks[unrolled_vertex(v, l, n0, d)].get(&(0, 0)).map(|c| (((l + shift) % d, l), c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Some(HomMap { degree, blocks }))
    }

    /// Vertex idempotents. A vertex of a fixed label with copy `c` gets
    /// `(1/d) sum_g zeta^(s g) phi^g` with `s = characters[c - 1]`.
    pub fn idempotents(&self, qp: &Qp, characters: &[usize]) -> Result<Vec<Element>, ModuleError> {
        let end = &self.end;
        qp.quiver
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let u = self.vertex_module[i];
                match (self.shifts.get(&u), v.copy) {
                    (Some(phi), Some(c)) => {
                        let d = end.modules[u].rank(0);
                        let s = characters[c - 1] as i64;
                        let mut power = end.identity(u)?;
                        let mut sum = Element::new();
                        for g in 0..d as i64 {
                            let coeff = &Cyc::zeta(d, s * g) * &Cyc::frac(d, 1, d as i64);
                            sum = EndAlgebra::add(&sum, &EndAlgebra::scale(&power, &coeff));
                            power = end.mul(&power, phi);
                        }
                        Ok(sum)
                    }
                    _ => end.identity(u),
                }
            })
            .collect()
    }
}

/// Outcome of the three-part check that `End(T)` realizes the Jacobian
/// algebra.
#[derive(Clone, Debug)]
pub struct Report {
    pub characters: Vec<usize>,
    /// Unit scalar per arrow that makes every relation hold.
    pub gauge: Result<Vec<Cyc>, VerifyError>,
    pub generation: Result<(), VerifyError>,
    pub dimensions: Result<(), VerifyError>,
    pub end_dim: usize,
    pub end_filtered: Vec<usize>,
    pub algebra_filtered: Vec<usize>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.gauge.is_ok() && self.generation.is_ok() && self.dimensions.is_ok()
    }

    pub fn failures(&self) -> Vec<VerifyError> {
        let mut out = Vec::new();
        if let Err(e) = &self.gauge {
            out.push(e.clone());
        }
        if let Err(e) = &self.generation {
            out.push(e.clone());
        }
        if let Err(e) = &self.dimensions {
            out.push(e.clone());
        }
        out
    }

    /// How many arrows needed a scalar other than 1.
    pub fn nontrivial_gauge(&self) -> usize {
        self.gauge.as_ref().map(|g| g.iter().filter(|c| !c.is_one()).count()).unwrap_or(0)
    }
}

struct Images {
    arrows: Vec<Element>,
}

impl Images {
    fn path(&self, end: &EndAlgebra, w: &[u32]) -> Element {
        let mut it = w.iter();
        let Some(&first) = it.next() else { return Element::new() };
        let mut cur = self.arrows[first as usize].clone();
        for &a in it {
            cur = end.mul(&cur, &self.arrows[a as usize]);
        }
        cur
    }
}

fn arrow_images(qp: &Qp, t: &TData, idem: &[Element], weights: &[u32]) -> Result<Images, VerifyError> {
    let end = &t.end;
    let mut arrows = Vec::new();
    for (i, a) in qp.quiver.arrows.iter().enumerate() {
        let (u, v) = (t.vertex_module[a.source], t.vertex_module[a.target]);
        let Some(f) = t.label_map(u, v, weights[i] as i64)? else { return Err(VerifyError::ZeroArrow { arrow: i }) };
        let x = end.element(u, v, &f)?;
        let p = end.mul(&end.mul(&idem[a.source], &x), &idem[a.target]);
        let Some(lead) = p.values().next() else { return Err(VerifyError::ZeroArrow { arrow: i }) };
        let lead = lead.inv().unwrap();
        arrows.push(EndAlgebra::scale(&p, &lead));
    }
    Ok(Images { arrows })
}

const TAG: usize = 1 << 40;

/// The unique (up to scale) linear dependency among the images, if the
/// nonzero ones span a space of one dimension less than their number.
fn dependency(images: &[&Element]) -> Option<Vec<(usize, Cyc)>> {
    let mut ech = Echelon::new();
    let mut found = None;
    for (i, x) in images.iter().enumerate() {
        let mut row = (*x).clone();
        row.insert(TAG + i, Cyc::one(1));
        let rem = ech.reduce(row);
        if rem.keys().all(|&k| k >= TAG) {
            if found.is_some() {
                return None;
            }
            found = Some(rem.into_iter().map(|(k, c)| (k - TAG, c)).collect());
        } else {
            ech.insert(rem);
        }
    }
    found
}

/// Solves for one unit per arrow so that `sum c_i * gauge(p_i) * image(p_i)`
/// vanishes for every relation. Each relation whose images have a unique
/// dependency fixes the ratios of its monomials; the resulting system
/// `prod gauge^e = mu` is solved by elimination on exponents `+-1`, with
/// free arrows set to 1.
fn solve_gauge(p: &Presentation, end: &EndAlgebra, images: &Images) -> Result<Vec<Cyc>, VerifyError> {
    let na = p.quiver.arrows.len();
    let order = p.order;
    let imgs: Vec<Vec<Element>> = p.relations.iter().map(|r| r.terms.iter().map(|(w, _)| images.path(end, w)).collect()).collect();
    let mut constraints: Vec<(usize, BTreeMap<usize, i64>, Cyc)> = Vec::new();
    for (ri, r) in p.relations.iter().enumerate() {
        let live: Vec<usize> = (0..r.terms.len()).filter(|&i| !imgs[ri][i].is_empty()).collect();
        if live.is_empty() {
            continue;
        }
        let refs: Vec<&Element> = live.iter().map(|&i| &imgs[ri][i]).collect();
        let Some(dep) = dependency(&refs) else { continue };
        if dep.len() != live.len() {
            return Err(VerifyError::GaugeInconsistent { relation: ri });
        }
        let (i0, y0) = (live[dep[0].0], &dep[0].1);
        for (j, y) in &dep[1..] {
            let i = live[*j];
            let (ci, c0) = (&r.terms[i].1, &r.terms[i0].1);
            let mu = &(y * c0) * &(y0 * ci).inv().ok_or(VerifyError::GaugeInconsistent { relation: ri })?;
            let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
            for &x in &r.terms[i].0 {
                *exps.entry(x as usize).or_default() += 1;
            }
            for &x in &r.terms[i0].0 {
                *exps.entry(x as usize).or_default() -= 1;
            }
            exps.retain(|_, e| *e != 0);
            constraints.push((ri, exps, mu));
        }
    }
    let mut solved: Vec<(usize, i64, BTreeMap<usize, i64>, Cyc)> = Vec::new();
    let mut pending = constraints;
    while let Some((ri, exps, mu)) = pending.pop() {
        let Some((&v, &ev)) = exps.iter().find(|(_, e)| e.abs() == 1) else {
            if exps.is_empty() && mu.is_one() {
                continue;
            }
            return Err(VerifyError::GaugeInconsistent { relation: ri });
        };
        let rest: BTreeMap<usize, i64> = exps.iter().filter(|(&a, _)| a != v).map(|(&a, &e)| (a, e)).collect();
        for (_, other, nu) in pending.iter_mut() {
            let Some(f) = other.remove(&v) else { continue };
            for (&a, &e) in &rest {
                *other.entry(a).or_default() -= e * ev * f;
            }
            other.retain(|_, e| *e != 0);
            *nu = &*nu * &power(&mu, -f * ev);
        }
        solved.push((v, ev, rest, mu));
    }
    let mut gauge: Vec<Option<Cyc>> = vec![None; na];
    while let Some((v, ev, rest, mu)) = solved.pop() {
        let mut val = mu;
        for (&a, &e) in &rest {
            let g = gauge[a].get_or_insert_with(|| Cyc::one(order));
            val = &val * &power(g, -e);
        }
        gauge[v] = Some(power(&val, ev));
    }
    let gauge: Vec<Cyc> = gauge.into_iter().map(|g| g.unwrap_or_else(|| Cyc::one(order))).collect();
    for (ri, r) in p.relations.iter().enumerate() {
        let mut total = Element::new();
        for ((w, c), img) in r.terms.iter().zip(&imgs[ri]) {
            let mut s = c.clone();
            for &a in w {
                s = &s * &gauge[a as usize];
            }
            total = EndAlgebra::add(&total, &EndAlgebra::scale(img, &s));
        }
        if !total.is_empty() {
            return Err(VerifyError::GaugeInconsistent { relation: ri });
        }
    }
    Ok(gauge)
}

fn power(c: &Cyc, e: i64) -> Cyc {
    let base = if e < 0 { c.inv().unwrap() } else { c.clone() };
    (0..e.abs()).fold(Cyc::one(c.order()), |acc, _| &acc * &base)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, d - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Checks that `End(T)` realizes the algebra presented by `p` on the quiver
/// of `qp`: (a) arrow images satisfy every relation up to a unit gauge,
/// (b) they generate `End(T)` modulo `t^N`, (c) the images of paths longer
/// than `j` cut out quotients whose dimensions match the algebra's filtered
/// dimensions for `j = 0..=m`.
pub fn verify_presentation(qp: &Qp, p: &Presentation, m: usize, truncation: usize) -> Result<Report, VerifyError> {
    if truncation < m + 2 {
        return Err(VerifyError::TruncationTooSmall { m, n: truncation });
    }
    let weights = qp.grading().ok_or(VerifyError::Ungraded)?;
    let t = build_t(qp, truncation)?;
    let end = &t.end;
    let d = t.shifts.keys().next().map(|&u| end.modules[u].rank(0)).unwrap_or(1);
    let assignments = if t.shifts.is_empty() { vec![Vec::new()] } else { permutations(d) };
    let mut first: Option<(Vec<usize>, Vec<Element>, Images, Result<Vec<Cyc>, VerifyError>)> = None;
    for chars in &assignments {
        let idem = t.idempotents(qp, chars)?;
        let (images, gauge) = match arrow_images(qp, &t, &idem, &weights) {
            Ok(images) => {
                let gauge = solve_gauge(p, end, &images);
                (images, gauge)
            }
            Err(e) => (Images { arrows: Vec::new() }, Err(e)),
        };
        let ok = gauge.is_ok();
        if ok || first.as_ref().is_none_or(|f| f.2.arrows.is_empty() && !images.arrows.is_empty()) {
            first = Some((chars.clone(), idem, images, gauge));
        }
        if ok {
            break;
        }
    }
    let (characters, idem, images, gauge) = first.expect("at least one assignment");
    let mut multipliers = idem.clone();
    multipliers.extend(images.arrows.iter().cloned());

    let mut layers: Vec<Vec<Element>> = vec![idem.clone()];
    for _ in 0..=m {
        let mut next = Span::new();
        let mut basis = Vec::new();
        for x in layers.last().unwrap() {
            for a in &images.arrows {
                let y = end.mul(x, a);
                basis.extend(next.insert(end, &y));
            }
        }
        layers.push(basis);
    }
    let mut ideals: Vec<usize> = vec![0; m + 2];
    let mut ideal = Span::new();
    for len in (0..=m + 1).rev() {
        ideal.close(end, &layers[len], &multipliers, true);
        ideals[len] = ideal.dim();
    }
    let total = end.dim();
    let generation = if ideals[0] == total {
        Ok(())
    } else {
        Err(VerifyError::GenerationGap { expected: total, found: ideals[0] })
    };
    let end_filtered: Vec<usize> = (0..=m).map(|j| total - ideals[j + 1]).collect();
    let algebra_filtered = TruncatedPathAlgebra::new(p, m).filtered_dimensions();
    let dimensions = match (0..=m).find(|&j| end_filtered[j] != algebra_filtered[j]) {
        None => Ok(()),
        Some(j) => Err(VerifyError::DimensionMismatch { j, expected: algebra_filtered[j], found: end_filtered[j] }),
    };
    Ok(Report { characters, gauge, generation, dimensions, end_dim: total, end_filtered, algebra_filtered })
}

/// [`verify_presentation`] for the Jacobian algebra of an orbifold diagram.
pub fn verify_main(o: &OrbifoldDiagram, m: usize, truncation: usize) -> Result<Report, VerifyError> {
    let qp = qp_of_orbifold(o, 1)?;
    verify_presentation(&qp, &Presentation::jacobian(&qp), m, truncation)
}
