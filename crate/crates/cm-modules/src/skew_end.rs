use crate::hom::{hom_space, HomMap};
use crate::module::{rank_one, FiltModule};
use crate::ModuleError;
use labeling::Subset;
use std::collections::BTreeSet;

/// `R_2 = e (End_B(T) * G) e` for the rank-one modules of a rotation
/// invariant label set, with `e` the projection onto a cross-section of
/// the free orbits plus the fixed summands.
#[derive(Clone, Debug)]
pub struct SkewEnd {
    pub order: usize,
    pub cross_section: Vec<Subset>,
    pub fixed: Vec<Subset>,
    /// `(i, j, g, dim Hom(L_i, g L_j))` over the summands of `e`.
    pub blocks: Vec<(usize, usize, usize, usize)>,
    pub dim: usize,
    /// Every summand of `T` is a twist of a summand of `e`.
    pub full: bool,
}

/// Relabels the vertices of a map between twisted modules.
pub fn twist_map(f: &HomMap, shift: usize) -> HomMap {
    let nv = f.blocks.len();
    HomMap { degree: f.degree, blocks: (0..nv).map(|c| f.blocks[(c + shift) % nv].clone()).collect() }
}

pub fn skew_end(labels: &[Subset], k: usize, n: usize, n0: usize, truncation: usize) -> Result<SkewEnd, ModuleError> {
    if n0 == 0 || n % n0 != 0 {
        return Err(ModuleError::NotSymmetric);
    }
    let d = n / n0;
    let all: BTreeSet<Subset> = labels.iter().cloned().collect();
    if all.iter().any(|s| !all.contains(&s.shifted(n0, n))) {
        return Err(ModuleError::NotSymmetric);
    }
    let mut seen = BTreeSet::new();
    let (mut cross_section, mut fixed) = (Vec::new(), Vec::new());
    for s in &all {
        if seen.contains(s) {
            continue;
        }
        let orbit: Vec<Subset> = (0..d).map(|g| s.shifted(g * n0, n)).collect();
        if s.shifted(n0, n) == *s {
            fixed.push(s.clone());
        } else {
            cross_section.push(s.clone());
        }
        seen.extend(orbit);
    }
    let summands: Vec<&Subset> = cross_section.iter().chain(&fixed).collect();
    let modules: Vec<FiltModule> = summands.iter().map(|s| rank_one(s, k, n, truncation)).collect::<Result<_, _>>()?;
    for m in &modules {
        let twisted = m.twist(n0);
        for other in &modules {
            for f in hom_space(m, other)?.generators {
                hom_space(&twisted, &other.twist(n0))?.decompose(&twist_map(&f, n0))?;
            }
        }
    }
    let mut blocks = Vec::new();
    for (i, mi) in modules.iter().enumerate() {
        for (j, mj) in modules.iter().enumerate() {
            for g in 0..d {
                blocks.push((i, j, g, hom_space(mi, &mj.twist((g * n0) % n))?.truncated_dim()));
            }
        }
    }
    let dim = blocks.iter().map(|b| b.3).sum();
    let full = all.iter().all(|s| (0..d).any(|g| summands.contains(&&s.shifted(g * n0, n))));
    Ok(SkewEnd { order: d, cross_section, fixed, blocks, dim, full })
}
