use crate::echelon::{Echelon, SparseVec};
use crate::presentation::{PathQuiver, Presentation, Word};
use crate::AlgebraError;
use quiver_potential::Cyc;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Homogeneous polynomial: all words share one weighted degree.
type Poly = BTreeMap<Word, Cyc>;

/// A graded quotient of a path algebra, known exactly in weighted degrees up
/// to `max_degree` through a truncated noncommutative Groebner basis
/// (degree-then-lex order).
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    quiver: PathQuiver,
    weights: Vec<u32>,
    order: usize,
    max_degree: u32,
    basis: Vec<Poly>,
    leading: HashMap<Word, usize>,
    lengths: BTreeSet<usize>,
    /// Normal words per `(source, target, degree)`.
    normal: HashMap<(usize, usize, u32), Vec<Word>>,
}

/// Dimensions of `eAe / rad^{j+1}` for `j = 0..`, and whether every
/// quotient vanished on the last window of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub dims: Vec<usize>,
    pub stable: bool,
}

impl GradedAlgebra {
    pub fn new(p: &Presentation, weights: &[u32], max_degree: u32) -> Result<GradedAlgebra, AlgebraError> {
        if weights.len() != p.quiver.arrows.len() || weights.contains(&0) {
            return Err(AlgebraError::BadWeights);
        }
        let mut g = GradedAlgebra {
            quiver: p.quiver.clone(),
            weights: weights.to_vec(),
            order: p.order,
            max_degree,
            basis: Vec::new(),
            leading: HashMap::new(),
            lengths: BTreeSet::new(),
            normal: HashMap::new(),
        };
        let mut pending: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
        for (i, r) in p.relations.iter().enumerate() {
            let degs: BTreeSet<u32> = r.terms.iter().map(|(w, _)| g.degree(w)).collect();
            if degs.len() > 1 {
                return Err(AlgebraError::NotHomogeneous(i));
            }
            let mut f = Poly::new();
            for (w, c) in &r.terms {
                add_term(&mut f, w.clone(), c);
            }
            if let Some(&d) = degs.iter().next() {
                if d <= max_degree {
                    pending.entry(d).or_default().push(f);
                }
            }
        }
        while let Some((d, list)) = pending.pop_first() {
            for f in list {
                let f = g.reduce(f);
                let Some((lead, c)) = f.last_key_value() else { continue };
                let inv = c.inv().expect("nonzero leading coefficient");
                let lead = lead.clone();
                let f: Poly = f.into_iter().map(|(w, x)| (w, &inv * &x)).collect();
                let id = g.basis.len();
                g.basis.push(f);
                g.leading.insert(lead.clone(), id);
                g.lengths.insert(lead.len());
                for other in 0..=id {
                    for (a, b) in [(id, other), (other, id)] {
                        for s in g.overlaps(a, b) {
                            let sd = g.degree(s.keys().next().unwrap());
                            debug_assert!(sd >= d);
                            pending.entry(sd).or_default().push(s);
                        }
                        if a == b {
                            break;
                        }
                    }
                }
            }
        }
        g.enumerate_normal_words();
        Ok(g)
    }

    pub fn degree(&self, w: &[u32]) -> u32 {
        w.iter().map(|&a| self.weights[a as usize]).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn groebner_size(&self) -> usize {
        self.basis.len()
    }

    fn overlaps(&self, a: usize, b: usize) -> Vec<Poly> {
        let la = self.basis[a].last_key_value().unwrap().0;
        let lb = self.basis[b].last_key_value().unwrap().0;
        let mut out = Vec::new();
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] != lb[..k] {
                continue;
            }
            let tail = &lb[k..];
            let head = &la[..la.len() - k];
            if self.degree(la) + self.degree(tail) > self.max_degree {
                continue;
            }
            let mut s = Poly::new();
            for (w, c) in &self.basis[a] {
                add_term(&mut s, w.iter().chain(tail).copied().collect(), c);
            }
            for (w, c) in &self.basis[b] {
                add_term(&mut s, head.iter().chain(w).copied().collect(), &-c.clone());
            }
            if !s.is_empty() {
                out.push(s);
            }
        }
        out
    }

    fn find_leading(&self, w: &[u32]) -> Option<(usize, usize)> {
        for &len in self.lengths.iter().take_while(|&&l| l <= w.len()) {
            for i in 0..=w.len() - len {
                if let Some(&id) = self.leading.get(&w[i..i + len]) {
                    return Some((i, id));
                }
            }
        }
        None
    }

    fn reduce(&self, mut f: Poly) -> Poly {
        let mut out = Poly::new();
        while let Some((w, c)) = f.pop_last() {
            match self.find_leading(&w) {
                None => {
                    out.insert(w, c);
                }
                Some((i, id)) => {
                    let g = &self.basis[id];
                    let lead_len = g.last_key_value().unwrap().0.len();
                    let (u, v) = (&w[..i], &w[i + lead_len..]);
                    for (gw, gc) in g.iter().rev().skip(1) {
                        let word: Word = u.iter().chain(gw).chain(v).copied().collect();
                        add_term(&mut f, word, &-(&c * gc));
                    }
                }
            }
        }
        out
    }

    fn enumerate_normal_words(&mut self) {
        let nv = self.quiver.n_vertices;
        let mut by_end: BTreeMap<u32, Vec<(usize, usize, Word)>> = BTreeMap::new();
        by_end.insert(0, (0..nv).map(|v| (v, v, Vec::new())).collect());
        for d in 1..=self.max_degree {
            let mut layer = Vec::new();
            for (a, &w) in self.weights.iter().enumerate() {
                if w > d {
                    continue;
                }
                let Some(prev) = by_end.get(&(d - w)) else { continue };
                let src = self.quiver.source(a as u32);
                for (s, t, u) in prev {
                    if *t != src {
                        continue;
                    }
                    let mut x = u.clone();
                    x.push(a as u32);
                    let suffix_reducible = self
                        .lengths
                        .iter()
                        .take_while(|&&l| l <= x.len())
                        .any(|&l| self.leading.contains_key(&x[x.len() - l..]));
                    if !suffix_reducible {
                        layer.push((*s, self.quiver.target(a as u32), x));
                    }
                }
            }
            if !layer.is_empty() {
                by_end.insert(d, layer);
            }
        }
        for (d, list) in by_end {
            for (s, t, w) in list {
                self.normal.entry((s, t, d)).or_default().push(w);
            }
        }
        for v in self.normal.values_mut() {
            v.sort();
        }
    }

    /// Normal words from `s` to `t` in degree `d`.
    pub fn normal_words(&self, s: usize, t: usize, d: u32) -> &[Word] {
        self.normal.get(&(s, t, d)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Dimension of `e_s A_d e_t`.
    pub fn dim(&self, s: usize, t: usize, d: u32) -> usize {
        self.normal_words(s, t, d).len()
    }

    /// Normal form of a path, in coordinates of its block.
    pub fn normal_form(&self, w: &[u32]) -> Vec<(Word, Cyc)> {
        let mut f = Poly::new();
        if self.degree(w) <= self.max_degree {
            f.insert(w.to_vec(), Cyc::one(self.order));
        }
        self.reduce(f).into_iter().collect()
    }

    fn coordinates(&self, s: usize, t: usize, d: u32, f: &[(Word, Cyc)]) -> SparseVec {
        let words = self.normal_words(s, t, d);
        f.iter().map(|(w, c)| (words.binary_search(w).expect("normal word of the block"), c.clone())).collect()
    }

    /// Radical filtration of the idempotent subalgebra on vertices `e`:
    /// `rad(eAe)` is spanned by paths of positive degree, and its powers by
    /// products of such paths. `window` is the number of top degrees on
    /// which every computed quotient must vanish for the result to count as
    /// stable.
    pub fn radical_filtration(&self, e: &[usize], jmax: usize, window: u32) -> RadicalReport {
        let top = self.max_degree;
        let blocks: Vec<(usize, usize, u32)> =
            e.iter().flat_map(|&s| e.iter().flat_map(move |&t| (1..=top).map(move |d| (s, t, d)))).collect();
        // current power, as an echelon basis per block with its vectors
        let mut power: HashMap<(usize, usize, u32), (Echelon, Vec<Vec<(Word, Cyc)>>)> = blocks
            .iter()
            .map(|&(s, t, d)| {
                let words = self.normal_words(s, t, d);
                let mut ech = Echelon::new();
                let mut vecs = Vec::new();
                for w in words {
                    let v = vec![(w.clone(), Cyc::one(self.order))];
                    ech.insert(self.coordinates(s, t, d, &v));
                    vecs.push(v);
                }
                ((s, t, d), (ech, vecs))
            })
            .collect();
        let mut dims = Vec::new();
        let mut stable = true;
        let quotient = |power: &HashMap<(usize, usize, u32), (Echelon, Vec<Vec<(Word, Cyc)>>)>| {
            let mut q = 0;
            let mut high = false;
            for &(s, t, d) in &blocks {
                let missing = self.dim(s, t, d) - power[&(s, t, d)].0.rank();
                q += missing;
                if missing > 0 && d + window > top {
                    high = true;
                }
            }
            (q, high)
        };
        let (q, high) = quotient(&power);
        dims.push(e.len() + q);
        stable &= !high;
        for _ in 0..jmax {
            let mut next = HashMap::new();
            for &(s, t, d) in &blocks {
                let mut ech = Echelon::new();
                let mut vecs = Vec::new();
                let cap = self.dim(s, t, d);
                'fill: for &u in e {
                    for d1 in 1..d {
                        let (_, left) = &power[&(s, u, d1)];
                        let right = self.normal_words(u, t, d - d1);
                        for x in left {
                            for y in right {
                                if ech.rank() == cap {
                                    break 'fill;
                                }
                                let mut f = Poly::new();
                                for (xw, xc) in x {
                                    for (yw, yc) in self.reduce(BTreeMap::from([(xw.iter().chain(y).copied().collect::<Word>(), xc.clone())])) {
                                        add_term(&mut f, yw, &yc);
                                    }
                                }
                                let v: Vec<(Word, Cyc)> = f.into_iter().collect();
                                if ech.insert(self.coordinates(s, t, d, &v)) {
                                    vecs.push(v);
                                }
                            }
                        }
                    }
                }
                next.insert((s, t, d), (ech, vecs));
            }
            power = next;
            let (q, high) = quotient(&power);
            dims.push(e.len() + q);
            stable &= !high;
        }
        RadicalReport { dims, stable }
    }
}

fn add_term(f: &mut Poly, w: Word, c: &Cyc) {
    let e = f.entry(w.clone()).or_insert_with(|| Cyc::zero(c.order()));
    *e += c;
    if e.is_zero() {
        f.remove(&w);
    }
}

/// Radical filtration of `eAe` for `j = 0..=jmax`, raising the degree bound
/// by `window` until the quotients vanish on the top window of degrees.
pub fn stable_radical_filtration(
    p: &Presentation,
    weights: &[u32],
    e: &[usize],
    jmax: usize,
    window: u32,
) -> Result<RadicalReport, AlgebraError> {
    let cap = window * (jmax as u32 + 2) * weights.iter().copied().max().unwrap_or(1);
    let mut bound = 2 * window;
    loop {
        let report = GradedAlgebra::new(p, weights, bound)?.radical_filtration(e, jmax, window);
        if report.stable || bound >= cap {
            return Ok(report);
        }
        bound += window;
    }
}
