use crate::module::FiltModule;
use crate::ModuleError;
use path_algebra::{Echelon, SparseVec};
use quiver_potential::Cyc;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, HashMap};

/// A homogeneous module map. Entry `(row, col)` at a vertex sends source
/// generator `col` to `coeff * t^e` times target generator `row`, where the
/// exponent `e` is fixed by the degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMap {
    pub degree: i64,
    pub blocks: Vec<BTreeMap<(usize, usize), Cyc>>,
}

impl HomMap {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(BTreeMap::is_empty)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomMap) -> HomMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(f, g)| {
                let mut out: BTreeMap<(usize, usize), Cyc> = BTreeMap::new();
                for (&(s, r), a) in f {
                    for (&(p, _), b) in g.iter().filter(|((_, c), _)| *c == s) {
                        let e = out.entry((p, r)).or_insert_with(|| Cyc::zero(a.order()));
                        *e += &(b * a);
                    }
                }
                out.retain(|_, c| !c.is_zero());
                out
            })
            .collect();
        HomMap { degree: self.degree + other.degree, blocks }
    }

    pub fn scale(&self, c: &Cyc) -> HomMap {
        HomMap {
            degree: self.degree,
            blocks: self.blocks.iter().map(|b| b.iter().map(|(&k, x)| (k, c * x)).filter(|(_, x)| !x.is_zero()).collect()).collect(),
        }
    }
}

const TAG: usize = 1 << 40;

/// A basis over `K[t]` of the homogeneous homomorphisms between two
/// modules, solved exactly degree by degree.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: FiltModule,
    pub target: FiltModule,
    /// Free generators, sorted by degree.
    pub generators: Vec<HomMap>,
    offsets: Vec<usize>,
    /// Per residue of the degree mod `n`: generator ids by degree and the
    /// tagged echelon forms of every prefix.
    residues: HashMap<i64, (Vec<usize>, Vec<Echelon>)>,
}

impl HomSpace {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Dimension over `K` after truncating at `t^N`.
    pub fn truncated_dim(&self) -> usize {
        self.rank() * self.source.truncation
    }

    fn n(&self) -> i64 {
        self.source.tag.n() as i64
    }

    /// Exponent of `t` on an entry of a map of the given degree, if the
    /// entry can be nonzero.
    pub fn exponent(&self, v: usize, row: usize, col: usize, degree: i64) -> Option<u32> {
        exponent(&self.source, &self.target, v, row, col, degree)
    }

    pub fn flatten(&self, f: &HomMap) -> SparseVec {
        let mut out = SparseVec::new();
        for (v, b) in f.blocks.iter().enumerate() {
            for (&(row, col), c) in b {
                out.insert(self.offsets[v] + row * self.source.rank(v) + col, c.clone());
            }
        }
        out
    }

    /// Writes a homogeneous map as `sum c * t^j * generator`, returned as
    /// `(generator, j, c)`.
    pub fn decompose(&self, f: &HomMap) -> Result<Vec<(usize, u32, Cyc)>, ModuleError> {
        if f.is_zero() {
            return Ok(Vec::new());
        }
        let n = self.n();
        let Some((ids, prefixes)) = self.residues.get(&f.degree.rem_euclid(n)) else {
            return Err(ModuleError::NotInSpan);
        };
        let count = ids.iter().take_while(|&&g| self.generators[g].degree <= f.degree).count();
        let rem = prefixes[count].reduce(self.flatten(f));
        if rem.keys().any(|&c| c < TAG) {
            return Err(ModuleError::NotInSpan);
        }
        Ok(rem
            .into_iter()
            .map(|(c, x)| {
                let g = c - TAG;
                (g, ((f.degree - self.generators[g].degree) / n) as u32, -x)
            })
            .collect())
    }

    /// The map `t^j * generator`.
    pub fn generator_power(&self, g: usize, j: u32) -> HomMap {
        let mut f = self.generators[g].clone();
        f.degree += j as i64 * self.n();
        f
    }
}

fn exponent(m: &FiltModule, n_mod: &FiltModule, v: usize, row: usize, col: usize, degree: i64) -> Option<u32> {
    let n = m.tag.n() as i64;
    let diff = m.degrees[v][col] + degree - n_mod.degrees[v][row];
    (diff >= 0 && diff % n == 0).then_some((diff / n) as u32)
}

fn solve_degree(m: &FiltModule, n_mod: &FiltModule, offsets: &[usize], degree: i64) -> Vec<SparseVec> {
    let key = |v: usize, row: usize, col: usize| offsets[v] + row * m.rank(v) + col;
    let live = |v: usize, row: usize, col: usize| exponent(m, n_mod, v, row, col, degree).is_some();
    let mut eqs = Echelon::new();
    for a in 0..m.arrows.len() {
        let (v, w) = m.arrow_ends(a);
        let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for e in &n_mod.arrows[a] {
            for r in 0..m.rank(v) {
                if live(v, e.col, r) {
                    let eq = rows.entry((e.row, r)).or_default();
                    acc(eq, key(v, e.col, r), &e.coeff);
                }
            }
        }
        for e in &m.arrows[a] {
            for s in 0..n_mod.rank(w) {
                if live(w, s, e.row) {
                    let eq = rows.entry((s, e.col)).or_default();
                    acc(eq, key(w, s, e.row), &-e.coeff.clone());
                }
            }
        }
        for (_, eq) in rows {
            if !eq.is_empty() {
                eqs.insert(eq);
            }
        }
    }
    eqs.make_reduced();
    let mut out = Vec::new();
    for v in 0..m.n_vertices() {
        for row in 0..n_mod.rank(v) {
            for col in 0..m.rank(v) {
                let f = key(v, row, col);
                if !live(v, row, col) || eqs.is_pivot(f) {
                    continue;
                }
                let mut x = SparseVec::new();
                x.insert(f, Cyc::one(1));
                for p in eqs.pivots() {
                    if let Some(c) = eqs.row(p).and_then(|r| r.get(&f)) {
                        x.insert(p, -c.clone());
                    }
                }
                out.push(x);
            }
        }
    }
    out
}

fn acc(v: &mut SparseVec, k: usize, c: &Cyc) {
    let e = v.entry(k).or_insert_with(|| Cyc::zero(c.order()));
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

fn unflatten(m: &FiltModule, offsets: &[usize], degree: i64, x: &SparseVec) -> HomMap {
    let mut blocks = vec![BTreeMap::new(); m.n_vertices()];
    for (&k, c) in x {
        let v = offsets.partition_point(|&o| o <= k) - 1;
        let local = k - offsets[v];
        blocks[v].insert((local / m.rank(v), local % m.rank(v)), c.clone());
    }
    HomMap { degree, blocks }
}

/// All homomorphisms from `m` to `n_mod` as a graded free `K[t]`-module.
/// Generators occur in degrees below the largest entry degree plus `n`,
/// since a map of higher degree is `t` times a map.
pub fn hom_space(m: &FiltModule, n_mod: &FiltModule) -> Result<HomSpace, ModuleError> {
    if m.tag != n_mod.tag {
        return Err(ModuleError::WrongAlgebra);
    }
    if m.truncation != n_mod.truncation {
        return Err(ModuleError::TruncationMismatch);
    }
    let n = m.tag.n() as i64;
    let mut offsets = vec![0];
    for v in 0..m.n_vertices() {
        offsets.push(offsets[v] + m.rank(v) * n_mod.rank(v));
    }
    let ambient: Vec<i64> = (0..m.n_vertices())
        .flat_map(|v| n_mod.degrees[v].iter().flat_map(move |&s| m.degrees[v].iter().map(move |&r| s - r)))
        .collect();
    let (Some(&lo), Some(&hi)) = (ambient.iter().min(), ambient.iter().max()) else {
        return Ok(HomSpace { source: m.clone(), target: n_mod.clone(), generators: Vec::new(), offsets, residues: HashMap::new() });
    };
    let mut found: HashMap<i64, Echelon> = HashMap::new();
    let mut generators = Vec::new();
    for degree in lo..hi + n {
        let span = found.entry(degree.rem_euclid(n)).or_default();
        for x in solve_degree(m, n_mod, &offsets, degree) {
            if span.insert(x.clone()) {
                generators.push(unflatten(m, &offsets, degree, &x));
            }
        }
    }
    generators.sort_by_key(|g| g.degree);
    let mut space = HomSpace { source: m.clone(), target: n_mod.clone(), generators, offsets, residues: HashMap::new() };
    let mut residues: HashMap<i64, (Vec<usize>, Vec<Echelon>)> = HashMap::new();
    for (g, f) in space.generators.iter().enumerate() {
        let (ids, prefixes) = residues.entry(f.degree.rem_euclid(n)).or_insert_with(|| (Vec::new(), vec![Echelon::new()]));
        let mut next = prefixes.last().unwrap().clone();
        let mut row = space.flatten(f);
        row.insert(TAG + g, Cyc::one(1));
        next.insert(row);
        ids.push(g);
        prefixes.push(next);
    }
    space.residues = residues;
    Ok(space)
}

/// Whether some homomorphism is invertible modulo `t`, tested on random
/// combinations of the generators with a fixed seed. A positive answer is
/// certain; a negative one fails only with negligible probability.
pub fn is_isomorphic(m: &FiltModule, n_mod: &FiltModule) -> Result<bool, ModuleError> {
    if (0..m.n_vertices()).any(|v| m.rank(v) != n_mod.rank(v)) {
        return Ok(false);
    }
    let h = hom_space(m, n_mod)?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..4 {
        let coeffs: Vec<Cyc> = h.generators.iter().map(|_| Cyc::int(1, rng.random_range(1..=97))).collect();
        let invertible = (0..m.n_vertices()).all(|v| {
            let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (g, c) in h.generators.iter().zip(&coeffs) {
                for (&(row, col), x) in &g.blocks[v] {
                    if h.exponent(v, row, col, g.degree) == Some(0) {
                        acc(rows.entry(row).or_default(), col, &(c * x));
                    }
                }
            }
            let mut ech = Echelon::new();
            rows.into_values().filter(|r| ech.insert(r.clone())).count() == m.rank(v)
        });
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}
