use quiver_potential::Cyc;
use std::collections::BTreeMap;

pub type SparseVec = BTreeMap<usize, Cyc>;

/// Row-echelon basis of a subspace; each row is monic at its pivot, the
/// smallest column it touches.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

pub fn axpy(v: &mut SparseVec, a: &Cyc, row: &SparseVec) {
    for (&c, x) in row {
        let e = v.entry(c).or_insert_with(|| Cyc::zero(x.order()));
        *e -= &(a * x);
        if e.is_zero() {
            v.remove(&c);
        }
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0;
        loop {
            let next = v.range(from..).map(|(&c, _)| c).find(|c| self.rows.contains_key(c));
            let Some(c) = next else { return v };
            let a = v[&c].clone();
            axpy(&mut v, &a, &self.rows[&c]);
            from = c + 1;
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseVec = v.iter().map(|(&c, x)| (c, &inv * x)).collect();
        self.rows.insert(p, row);
        true
    }

    /// Clears every pivot column from the other rows.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let row = self.rows[&p].clone();
            for q in self.rows.keys().copied().filter(|&q| q < p).collect::<Vec<_>>() {
                let r = self.rows.get_mut(&q).unwrap();
                if let Some(a) = r.get(&p).cloned() {
                    axpy(r, &a, &row);
                }
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, Cyc::int(1, x))).collect()
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut e = Echelon::new();
        assert!(e.insert(vec_of(&[(0, 2), (3, 4)])));
        assert!(e.insert(vec_of(&[(1, 1), (3, 1)])));
        assert!(!e.insert(vec_of(&[(0, 1), (1, -1), (3, 1)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.row(0), Some(&vec_of(&[(0, 1), (3, 2)])));
    }

    #[test]
    fn reduced_form_clears_pivot_columns() {
        let mut e = Echelon::new();
        e.insert(vec_of(&[(0, 1), (1, 1)]));
        e.insert(vec_of(&[(1, 1), (2, 1)]));
        e.make_reduced();
        assert_eq!(e.row(0), Some(&vec_of(&[(0, 1), (2, -1)])));
    }
}
