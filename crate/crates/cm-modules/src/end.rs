use crate::hom::{hom_space, HomMap, HomSpace};
use crate::module::FiltModule;
use crate::{map_par, ModuleError};
use path_algebra::{Echelon, SparseVec};
use quiver_potential::Cyc;
use std::collections::{BTreeMap, HashMap};

/// An element of the truncated endomorphism algebra, in coordinates
/// `t^j * generator` of the Hom blocks.
pub type Element = SparseVec;

/// `End(M_1 ⊕ ... ⊕ M_r)` over `K[t]/(t^N)`, with structure constants
/// from composing Hom generators.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub modules: Vec<FiltModule>,
    pub truncation: usize,
    homs: Vec<HomSpace>,
    offsets: Vec<usize>,
    table: HashMap<(usize, usize, usize, usize, usize), Vec<(usize, u32, Cyc)>>,
}

/// Coordinates of a basis element: Hom block `(u, v)`, generator `g`,
/// power `t^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub u: usize,
    pub v: usize,
    pub g: usize,
    pub j: usize,
}

impl EndAlgebra {
    pub fn new(modules: Vec<FiltModule>) -> Result<EndAlgebra, ModuleError> {
        let r = modules.len();
        let truncation = modules.first().map(|m| m.truncation).unwrap_or(0);
        let homs: Vec<HomSpace> = map_par(r * r, |b| hom_space(&modules[b / r], &modules[b % r])).into_iter().collect::<Result<_, _>>()?;
        let mut offsets = vec![0];
        for h in &homs {
            offsets.push(offsets.last().unwrap() + h.rank() * truncation);
        }
        let triples: Vec<(usize, usize, usize)> =
            (0..r).flat_map(|u| (0..r).flat_map(move |v| (0..r).map(move |w| (u, v, w)))).collect();
        let parts = map_par(triples.len(), |i| {
            let (u, v, w) = triples[i];
            let (f, g, h) = (&homs[u * r + v], &homs[v * r + w], &homs[u * r + w]);
            let mut out = Vec::new();
            for (a, x) in f.generators.iter().enumerate() {
                for (b, y) in g.generators.iter().enumerate() {
                    out.push(((u, v, w, a, b), h.decompose(&x.then(y))?));
                }
            }
            Ok::<_, ModuleError>(out)
        });
        let mut table = HashMap::new();
        for part in parts {
            table.extend(part?);
        }
        Ok(EndAlgebra { modules, truncation, homs, offsets, table })
    }

    pub fn n_modules(&self) -> usize {
        self.modules.len()
    }

    pub fn hom(&self, u: usize, v: usize) -> &HomSpace {
        &self.homs[u * self.n_modules() + v]
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn coord(&self, c: Coord) -> usize {
        self.offsets[c.u * self.n_modules() + c.v] + c.g * self.truncation + c.j
    }

    pub fn decode(&self, i: usize) -> Coord {
        let b = self.offsets.partition_point(|&o| o <= i) - 1;
        let local = i - self.offsets[b];
        let r = self.n_modules();
        Coord { u: b / r, v: b % r, g: local / self.truncation, j: local % self.truncation }
    }

    pub fn degree(&self, i: usize) -> i64 {
        let c = self.decode(i);
        self.hom(c.u, c.v).generators[c.g].degree + (c.j * self.modules[0].tag.n()) as i64
    }

    /// The element of a homogeneous map `M_u -> M_v`.
    pub fn element(&self, u: usize, v: usize, f: &HomMap) -> Result<Element, ModuleError> {
        let mut out = Element::new();
        for (g, j, c) in self.hom(u, v).decompose(f)? {
            if (j as usize) < self.truncation {
                out.insert(self.coord(Coord { u, v, g, j: j as usize }), c);
            }
        }
        Ok(out)
    }

    pub fn identity(&self, u: usize) -> Result<Element, ModuleError> {
        let m = &self.modules[u];
        let blocks = (0..m.n_vertices()).map(|v| (0..m.rank(v)).map(|g| ((g, g), Cyc::one(1))).collect()).collect();
        self.element(u, u, &HomMap { degree: 0, blocks })
    }

    /// `x` followed by `y`, that is the composite `y ∘ x`.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        let ys: Vec<(Coord, &Cyc)> = y.iter().map(|(&i, c)| (self.decode(i), c)).collect();
        for (&i, a) in x {
            let cx = self.decode(i);
            for (cy, b) in ys.iter().filter(|(cy, _)| cy.u == cx.v) {
                let ab = a * *b;
                for (g, j, c) in &self.table[&(cx.u, cx.v, cy.v, cx.g, cy.g)] {
                    let j = cx.j + cy.j + *j as usize;
                    if j < self.truncation {
                        let k = self.coord(Coord { u: cx.u, v: cy.v, g: *g, j });
                        let e = out.entry(k).or_insert_with(|| Cyc::zero(c.order()));
                        *e += &(&ab * c);
                        if e.is_zero() {
                            out.remove(&k);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(x: &Element, c: &Cyc) -> Element {
        x.iter().map(|(&k, a)| (k, a * c)).filter(|(_, a)| !a.is_zero()).collect()
    }

    pub fn add(x: &Element, y: &Element) -> Element {
        let mut out = x.clone();
        for (&k, b) in y {
            let e = out.entry(k).or_insert_with(|| Cyc::zero(b.order()));
            *e += b;
            if e.is_zero() {
                out.remove(&k);
            }
        }
        out
    }

    /// Splits an element into components of fixed block and degree.
    pub fn homogeneous_parts(&self, x: &Element) -> BTreeMap<(usize, usize, i64), Element> {
        let mut out: BTreeMap<(usize, usize, i64), Element> = BTreeMap::new();
        for (&i, c) in x {
            let k = self.decode(i);
            out.entry((k.u, k.v, self.degree(i))).or_default().insert(i, c.clone());
        }
        out
    }
}

/// A graded subspace of an [`EndAlgebra`], stored block by block.
#[derive(Clone, Debug, Default)]
pub struct Span {
    blocks: HashMap<(usize, usize, i64), Echelon>,
    dim: usize,
}

impl Span {
    pub fn new() -> Span {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds the homogeneous parts of `x`; returns the parts that enlarged
    /// the span.
    pub fn insert(&mut self, end: &EndAlgebra, x: &Element) -> Vec<Element> {
        let mut fresh = Vec::new();
        for (key, part) in end.homogeneous_parts(x) {
            let ech = self.blocks.entry(key).or_default();
            if ech.insert(part.clone()) {
                self.dim += 1;
                fresh.push(part);
            }
        }
        fresh
    }

    pub fn contains(&self, end: &EndAlgebra, x: &Element) -> bool {
        end.homogeneous_parts(x).into_iter().all(|(key, part)| self.blocks.get(&key).is_some_and(|e| e.contains(part)))
    }

    /// Closes the span under multiplication by `multipliers` on the right
    /// (and on the left too when `two_sided`), starting from `seeds`.
    pub fn close(&mut self, end: &EndAlgebra, seeds: &[Element], multipliers: &[Element], two_sided: bool) {
        let mut queue: Vec<Element> = seeds.iter().flat_map(|s| self.insert(end, s)).collect();
        while let Some(x) = queue.pop() {
            for a in multipliers {
                let mut products = vec![end.mul(&x, a)];
                if two_sided {
                    products.push(end.mul(a, &x));
                }
                for p in products {
                    queue.extend(self.insert(end, &p));
                }
            }
        }
    }
}
