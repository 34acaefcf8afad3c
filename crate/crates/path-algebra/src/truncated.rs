use crate::echelon::{Echelon, SparseVec};
use crate::presentation::{Presentation, Word};
use crate::{map_par, AlgebraError};
use quiver_potential::{Cyc, Qp};
use std::collections::HashMap;

/// Paths between two vertices of length at most the bound, ordered by
/// length and then lexicographically, with the relation span reduced to
/// echelon form. Pivots are the shortest terms, so the rows whose pivot has
/// length at most `j` span the relations seen modulo paths longer than `j`.
#[derive(Clone, Debug)]
pub struct Block {
    pub paths: Vec<Word>,
    index: HashMap<Word, usize>,
    relations: Echelon,
}

impl Block {
    pub fn column(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn pivots_up_to(&self, j: usize) -> usize {
        self.relations.pivots().filter(|&c| self.paths[c].len() <= j).count()
    }

    fn paths_up_to(&self, j: usize) -> usize {
        self.paths.partition_point(|p| p.len() <= j)
    }
}

/// `kQ / (I + paths longer than m)` with normal forms per vertex pair.
#[derive(Clone, Debug)]
pub struct TruncatedPathAlgebra {
    pub presentation: Presentation,
    pub max_len: usize,
    blocks: Vec<Block>,
}

fn all_paths(p: &Presentation, m: usize) -> Vec<Vec<Word>> {
    let q = &p.quiver;
    let out = q.out_arrows();
    let nv = q.n_vertices;
    let mut by_pair = vec![Vec::new(); nv * nv];
    for s in 0..nv {
        by_pair[s * nv + s].push(Vec::new());
        let mut layer: Vec<(Word, usize)> = vec![(Vec::new(), s)];
        for _ in 0..m {
            let mut next = Vec::new();
            for (w, v) in &layer {
                for &a in &out[*v] {
                    let mut u = w.clone();
                    u.push(a);
                    let t = q.target(a);
                    by_pair[s * nv + t].push(u.clone());
                    next.push((u, t));
                }
            }
            layer = next;
        }
    }
    for paths in &mut by_pair {
        paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
    by_pair
}

impl TruncatedPathAlgebra {
    pub fn new(p: &Presentation, m: usize) -> TruncatedPathAlgebra {
        let nv = p.quiver.n_vertices;
        let paths = all_paths(p, m);
        let blocks = map_par(nv * nv, |b| {
            let (s, t) = (b / nv, b % nv);
            let list = paths[b].clone();
            let index: HashMap<Word, usize> = list.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let mut relations = Echelon::new();
            'rel: for r in &p.relations {
                let room = m.saturating_sub(r.min_len());
                if r.min_len() > m {
                    continue;
                }
                for pre in paths[s * nv + r.source].iter().take_while(|w| w.len() <= room) {
                    for post in paths[r.target * nv + t].iter().take_while(|w| pre.len() + w.len() <= room) {
                        if relations.rank() == list.len() {
                            break 'rel;
                        }
                        let mut v = SparseVec::new();
                        for (w, c) in &r.terms {
                            if pre.len() + w.len() + post.len() > m {
                                continue;
                            }
                            let full: Word = pre.iter().chain(w).chain(post.iter()).copied().collect();
                            let col = index[&full];
                            let e = v.entry(col).or_insert_with(|| Cyc::zero(p.order));
                            *e += c;
                            if e.is_zero() {
                                v.remove(&col);
                            }
                        }
                        relations.insert(v);
                    }
                }
            }
            relations.make_reduced();
            Block { paths: list, index, relations }
        });
        TruncatedPathAlgebra { presentation: p.clone(), max_len: m, blocks }
    }

    pub fn n_vertices(&self) -> usize {
        self.presentation.quiver.n_vertices
    }

    pub fn block(&self, s: usize, t: usize) -> &Block {
        &self.blocks[s * self.n_vertices() + t]
    }

    /// `dim e_s (A / (I + P^{>j})) e_t`.
    pub fn block_dim(&self, s: usize, t: usize, j: usize) -> usize {
        let b = self.block(s, t);
        b.paths_up_to(j) - b.pivots_up_to(j)
    }

    /// `dim A / (I + P^{>j})` for `j = 0..=m`.
    pub fn filtered_dimensions(&self) -> Vec<usize> {
        (0..=self.max_len).map(|j| self.blocks.iter().map(|b| b.paths_up_to(j) - b.pivots_up_to(j)).sum()).collect()
    }

    /// Filtered dimensions of `eAe` for the vertex set `e`.
    pub fn idempotent_dimensions(&self, e: &[usize]) -> Vec<usize> {
        (0..=self.max_len).map(|j| e.iter().flat_map(|&s| e.iter().map(move |&t| (s, t))).map(|(s, t)| self.block_dim(s, t, j)).sum()).collect()
    }

    /// Normal-form paths of `e_s A_j e_t`.
    pub fn basis(&self, s: usize, t: usize, j: usize) -> Vec<&Word> {
        let b = self.block(s, t);
        (0..b.paths_up_to(j)).filter(|&c| !b.relations.is_pivot(c)).map(|c| &b.paths[c]).collect()
    }

    /// Normal form of a path in `A_j`, as coefficients on basis paths
    /// (column indices of the block).
    pub fn normal_form(&self, s: usize, t: usize, w: &[u32], j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        if w.len() > j {
            return out;
        }
        let b = self.block(s, t);
        let c = b.column(w).expect("path within the length bound");
        match b.relations.row(c) {
            None => {
                out.insert(c, Cyc::one(self.presentation.order));
            }
            Some(row) => {
                for (&col, x) in row.iter().filter(|(&col, _)| col != c && b.paths[col].len() <= j) {
                    out.insert(col, -x.clone());
                }
            }
        }
        out
    }

    /// Whether every relation term fits under the length bound.
    pub fn sees_all_relations(&self) -> bool {
        self.presentation.relations.iter().all(|r| r.max_len() <= self.max_len)
    }
}

/// Frozen Jacobian algebra of a quiver with potential, truncated at path
/// length `m`.
pub fn frozen_jacobian(qp: &Qp, m: usize) -> Result<TruncatedPathAlgebra, AlgebraError> {
    let p = Presentation::jacobian(qp);
    let longest = p.relations.iter().map(|r| r.max_len()).max().unwrap_or(0);
    if m < 2 || m < longest {
        return Err(AlgebraError::DegreeTooSmall { m, needed: longest.max(2) });
    }
    Ok(TruncatedPathAlgebra::new(&p, m))
}

/// `B(k, n)` truncated at path length `m`.
pub fn preprojective_quotient(n: usize, k: usize, m: usize) -> TruncatedPathAlgebra {
    TruncatedPathAlgebra::new(&crate::preprojective_presentation(n, k), m)
}

/// `B_G`: the same relations on the `n0`-cycle.
pub fn preprojective_quotient_g(n0: usize, k: usize, n: usize, m: usize) -> TruncatedPathAlgebra {
    TruncatedPathAlgebra::new(&crate::preprojective_presentation_g(n0, k, n), m)
}
