use crate::ModuleError;
use labeling::{LabelClass, Subset};
use path_algebra::{preprojective_presentation, preprojective_presentation_g, Presentation};
use quiver_potential::Cyc;
use std::collections::BTreeMap;

/// Which boundary algebra a module lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    /// `B(k, n)` on the `n`-cycle.
    B { k: usize, n: usize },
    /// `B_G` on the `n0`-cycle.
    BG { n0: usize, k: usize, n: usize },
}

impl Tag {
    pub fn n_vertices(self) -> usize {
        match self {
            Tag::B { n, .. } => n,
            Tag::BG { n0, .. } => n0,
        }
    }

    pub fn k(self) -> usize {
        match self {
            Tag::B { k, .. } | Tag::BG { k, .. } => k,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Tag::B { n, .. } | Tag::BG { n, .. } => n,
        }
    }

    pub fn presentation(self) -> Presentation {
        match self {
            Tag::B { k, n } => preprojective_presentation(n, k),
            Tag::BG { n0, k, n } => preprojective_presentation_g(n0, k, n),
        }
    }

    /// `x` arrows have degree `n - k`, `y` arrows degree `k`, so `t = xy`
    /// has degree `n`.
    pub fn arrow_degree(self, a: usize) -> i64 {
        if a % 2 == 0 {
            (self.n() - self.k()) as i64
        } else {
            self.k() as i64
        }
    }
}

/// One nonzero entry `coeff * t^exp` of an arrow matrix, mapping source
/// generator `col` to target generator `row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coeff: Cyc,
    pub exp: u32,
}

/// A graded module over a boundary algebra that is free over `K[t]` at
/// every vertex, with homogeneous arrow actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltModule {
    pub tag: Tag,
    pub truncation: usize,
    /// Degree of each free generator, per vertex.
    pub degrees: Vec<Vec<i64>>,
    /// Arrow matrices, indexed like the arrows of the tag's presentation.
    pub arrows: Vec<Vec<Entry>>,
}

/// Sparse matrix of monomials keyed by `(row, col, exponent)`.
pub type MonoMatrix = BTreeMap<(usize, usize, u32), Cyc>;

fn arrow_ends(tag: Tag, a: usize) -> (usize, usize) {
    let m = tag.n_vertices();
    let i = a / 2;
    if a % 2 == 0 {
        ((i + m - 1) % m, i)
    } else {
        (i, (i + m - 1) % m)
    }
}

/// `L_I` over `B(k, n)`: `x_i` acts as 1 when `i` is in `I` and as `t`
/// otherwise, `y_i` the other way round. The generator at vertex 0 sits in
/// degree `sum(I)`, so that maps between these modules have degrees
/// matching the label exchanges.
pub fn rank_one(i: &Subset, k: usize, n: usize, truncation: usize) -> Result<FiltModule, ModuleError> {
    if i.len() != k || i.elements().iter().any(|&x| x == 0 || x > n) || k == 0 || k >= n {
        return Err(ModuleError::BadSubset(i.to_string()));
    }
    let tag = Tag::B { k, n };
    let mut degrees = vec![vec![i.elements().iter().sum::<usize>() as i64]; n];
    for v in 1..n {
        degrees[v][0] = degrees[v - 1][0] + (n - k) as i64 - if i.contains(v) { 0 } else { n as i64 };
    }
    let one = Cyc::one(1);
    let mut arrows = vec![Vec::new(); 2 * n];
    for v in 0..n {
        let label = if v == 0 { n } else { v };
        let inside = i.contains(label);
        arrows[2 * v].push(Entry { row: 0, col: 0, coeff: one.clone(), exp: u32::from(!inside) });
        arrows[2 * v + 1].push(Entry { row: 0, col: 0, coeff: one.clone(), exp: u32::from(inside) });
    }
    let m = FiltModule { tag, truncation, degrees, arrows };
    m.check()?;
    Ok(m)
}

/// The cover vertex (`0..n`) of generator `l` at `B_G` vertex `v`.
pub fn unrolled_vertex(v: usize, l: usize, n0: usize, d: usize) -> usize {
    let j = if v == 0 { n0 } else { v };
    (j + l * n0) % (n0 * d)
}

/// Folds a module over `B(k, n)` onto the `n0`-cycle: generator `l` at
/// vertex `v` of the result is the generator at cover vertex
/// [`unrolled_vertex`]`(v, l)`.
pub fn fold(m: &FiltModule, n0: usize) -> Result<FiltModule, ModuleError> {
    let Tag::B { k, n } = m.tag else { return Err(ModuleError::WrongAlgebra) };
    if n0 == 0 || n % n0 != 0 || m.degrees.iter().any(|g| g.len() != 1) {
        return Err(ModuleError::WrongAlgebra);
    }
    let d = n / n0;
    let tag = Tag::BG { n0, k, n };
    let degrees: Vec<Vec<i64>> =
        (0..n0).map(|v| (0..d).map(|l| m.degrees[unrolled_vertex(v, l, n0, d)][0]).collect()).collect();
    let mut arrows = vec![Vec::new(); 2 * n0];
    for c in 0..n {
        let (v, l) = folded(c, n0, n);
        let (pv, pl) = folded((c + n - 1) % n, n0, n);
        for e in &m.arrows[2 * c] {
            arrows[2 * v].push(Entry { row: l, col: pl, ..e.clone() });
        }
        for e in &m.arrows[2 * c + 1] {
            arrows[2 * v + 1].push(Entry { row: pl, col: l, ..e.clone() });
        }
        debug_assert_eq!(pv, (v + n0 - 1) % n0);
    }
    let out = FiltModule { tag, truncation: m.truncation, degrees, arrows };
    out.check()?;
    Ok(out)
}

fn folded(c: usize, n0: usize, n: usize) -> (usize, usize) {
    let v = c % n0;
    let j = if v == 0 { n0 } else { v };
    (v, (c + n - j) % n / n0)
}

/// `L_{[I]}` over `B_G(n0, k, n)` for a representative `I` of the class.
pub fn class_module(
    class: &LabelClass,
    k: usize,
    rep: &Subset,
    truncation: usize,
) -> Result<FiltModule, ModuleError> {
    if !class.contains(rep) {
        return Err(ModuleError::BadRepresentative(rep.to_string()));
    }
    let n0 = class.n0();
    let n = n0 * class.order();
    fold(&rank_one(rep, k, n, truncation)?, n0)
}

impl FiltModule {
    pub fn n_vertices(&self) -> usize {
        self.degrees.len()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.degrees[v].len()
    }

    pub fn arrow_ends(&self, a: usize) -> (usize, usize) {
        arrow_ends(self.tag, a)
    }

    /// Checks shapes and homogeneity, that `t` acts centrally as the
    /// identity times `t`, and that every relation acts as zero.
    pub fn check(&self) -> Result<(), ModuleError> {
        let nv = self.tag.n_vertices();
        if self.degrees.len() != nv || self.arrows.len() != 2 * nv {
            return Err(ModuleError::Shape);
        }
        let n = self.tag.n() as i64;
        for (a, entries) in self.arrows.iter().enumerate() {
            let (s, t) = self.arrow_ends(a);
            for e in entries {
                if e.col >= self.rank(s) || e.row >= self.rank(t) {
                    return Err(ModuleError::Shape);
                }
                let lhs = self.degrees[s][e.col] + self.tag.arrow_degree(a);
                if lhs != self.degrees[t][e.row] + n * e.exp as i64 {
                    return Err(ModuleError::NotHomogeneous(a));
                }
            }
        }
        let p = self.tag.presentation();
        for (i, r) in p.relations.iter().enumerate() {
            let mut total = MonoMatrix::new();
            for (w, c) in &r.terms {
                for ((row, col, e), x) in self.act(w) {
                    add(&mut total, (row, col, e), &(c * &x));
                }
            }
            if !total.is_empty() {
                return Err(ModuleError::RelationFails(i));
            }
        }
        for v in 0..nv {
            let around = [(2 * ((v + 1) % nv)) as u32, (2 * ((v + 1) % nv) + 1) as u32];
            let mut expected = MonoMatrix::new();
            for g in 0..self.rank(v) {
                expected.insert((g, g, 1), Cyc::one(1));
            }
            if self.act(&around) != expected {
                return Err(ModuleError::TNotCentral(v));
            }
        }
        Ok(())
    }

    /// Action of a path (arrows in travel order).
    pub fn act(&self, w: &[u32]) -> MonoMatrix {
        let Some(&first) = w.first() else { return MonoMatrix::new() };
        let (s, _) = self.arrow_ends(first as usize);
        let mut cur = MonoMatrix::new();
        for g in 0..self.rank(s) {
            cur.insert((g, g, 0), Cyc::one(1));
        }
        for &a in w {
            let mut next = MonoMatrix::new();
            for e in &self.arrows[a as usize] {
                for (&(row, col, x), c) in cur.range((e.col, 0, 0)..(e.col + 1, 0, 0)) {
                    debug_assert_eq!(row, e.col);
                    add(&mut next, (e.row, col, x + e.exp), &(&e.coeff * c));
                }
            }
            cur = next;
        }
        cur
    }

    /// The twisted module: vertex `c` of the result is vertex `c + shift`
    /// of `self`. On `L_I` a shift by `n0` gives `L_{I - n0}`.
    pub fn twist(&self, shift: usize) -> FiltModule {
        let nv = self.n_vertices();
        let degrees = (0..nv).map(|c| self.degrees[(c + shift) % nv].clone()).collect();
        let arrows = (0..2 * nv).map(|a| self.arrows[(a + 2 * shift) % (2 * nv)].clone()).collect();
        FiltModule { tag: self.tag, truncation: self.truncation, degrees, arrows }
    }

    /// Generator count over `K[t]`.
    pub fn total_rank(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }
}

pub(crate) fn add(m: &mut MonoMatrix, key: (usize, usize, u32), c: &Cyc) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key).or_insert_with(|| Cyc::zero(c.order()));
    *e += c;
    if e.is_zero() {
        m.remove(&key);
    }
}
