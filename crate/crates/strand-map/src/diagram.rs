use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

/// Whether the second visiting strand crosses the first one from its left
/// or from its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    SecondFromLeft,
    SecondFromRight,
}

impl Chirality {
    pub fn flip(self) -> Chirality {
        match self {
            Chirality::SecondFromLeft => Chirality::SecondFromRight,
            Chirality::SecondFromRight => Chirality::SecondFromLeft,
        }
    }

    pub fn from_side(side: Side) -> Chirality {
        match side {
            Side::Left => Chirality::SecondFromLeft,
            Side::Right => Chirality::SecondFromRight,
        }
    }

    pub fn side(self) -> Side {
        match self {
            Chirality::SecondFromLeft => Side::Left,
            Chirality::SecondFromRight => Side::Right,
        }
    }
}

/// A position on a strand: `pos` indexes the strand's crossing list (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub strand: usize,
    pub pos: usize,
}

impl Visit {
    pub fn new(strand: usize, pos: usize) -> Self {
        Visit { strand, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub label: usize,
    pub a: Visit,
    pub b: Visit,
    pub chir: Chirality,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("declared type is not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("expected {expected} strands, found {found}")]
    StrandCount { expected: usize, found: usize },
    #[error("crossing c{label} is visited {count} times, expected 2")]
    VisitCount { label: usize, count: usize },
    #[error("crossing c{label} record does not match the strand lists")]
    VisitMismatch { label: usize },
    #[error("crossing c{label} has two identical visits")]
    DegenerateCrossing { label: usize },
    #[error("duplicate crossing id c{0}")]
    DuplicateLabel(usize),
    #[error("strand {strand} refers to unknown crossing index {index}")]
    UnknownCrossing { strand: usize, index: usize },
}

/// Strands and crossings on a disk with `n` marked points.
///
/// Strand `i` (0-based) starts at point `i` and ends at `tau[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandDiagram {
    n: usize,
    tau: Vec<usize>,
    strands: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
}

impl StrandDiagram {
    pub fn new(
        n: usize,
        tau: Vec<usize>,
        strands: Vec<Vec<usize>>,
        crossings: Vec<Crossing>,
    ) -> Result<Self, DiagramError> {
        if tau.len() != n {
            return Err(DiagramError::NotAPermutation(n));
        }
        let mut seen = vec![false; n];
        for &t in &tau {
            if t >= n || seen[t] {
                return Err(DiagramError::NotAPermutation(n));
            }
            seen[t] = true;
        }
        if strands.len() != n {
            return Err(DiagramError::StrandCount { expected: n, found: strands.len() });
        }
        let mut counts = vec![0usize; crossings.len()];
        for (s, list) in strands.iter().enumerate() {
            for &c in list {
                if c >= crossings.len() {
                    return Err(DiagramError::UnknownCrossing { strand: s, index: c });
                }
                counts[c] += 1;
            }
        }
        let mut labels = std::collections::HashSet::new();
        for (i, c) in crossings.iter().enumerate() {
            if !labels.insert(c.label) {
                return Err(DiagramError::DuplicateLabel(c.label));
            }
            if counts[i] != 2 {
                return Err(DiagramError::VisitCount { label: c.label, count: counts[i] });
            }
            if c.a == c.b {
                return Err(DiagramError::DegenerateCrossing { label: c.label });
            }
            for v in [c.a, c.b] {
                if strands.get(v.strand).and_then(|l| l.get(v.pos)) != Some(&i) {
                    return Err(DiagramError::VisitMismatch { label: c.label });
                }
            }
        }
        Ok(StrandDiagram { n, tau, strands, crossings })
    }

    /// Builds a diagram from strand lists alone. `chir[c]` is the chirality
    /// of crossing `c` with its visits taken in (strand, pos) order.
    /// Labels are assigned 1.. in index order.
    pub fn from_visits(
        n: usize,
        tau: Vec<usize>,
        strands: Vec<Vec<usize>>,
        chir: &[Chirality],
    ) -> Result<Self, DiagramError> {
        let mut visits: Vec<Vec<Visit>> = vec![Vec::new(); chir.len()];
        for (s, list) in strands.iter().enumerate() {
            for (p, &c) in list.iter().enumerate() {
                if c >= chir.len() {
                    return Err(DiagramError::UnknownCrossing { strand: s, index: c });
                }
                visits[c].push(Visit::new(s, p));
            }
        }
        let mut crossings = Vec::with_capacity(chir.len());
        for (i, v) in visits.iter().enumerate() {
            if v.len() != 2 {
                return Err(DiagramError::VisitCount { label: i + 1, count: v.len() });
            }
            crossings.push(Crossing { label: i + 1, a: v[0], b: v[1], chir: chir[i] });
        }
        StrandDiagram::new(n, tau, strands, crossings)
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn tau_inv(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for (i, &t) in self.tau.iter().enumerate() {
            inv[t] = i;
        }
        inv
    }

    pub fn strands(&self) -> &[Vec<usize>] {
        &self.strands
    }

    pub fn strand(&self, s: usize) -> &[usize] {
        &self.strands[s]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Number of segments of a strand: one more than its crossing count.
    pub fn n_segments(&self, s: usize) -> usize {
        self.strands[s].len() + 1
    }

    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.crossings.iter().position(|c| c.label == label)
    }

    /// The side from which the other strand arrives at a visit.
    pub fn side_at(&self, v: Visit) -> Side {
        let c = &self.crossings[self.strands[v.strand][v.pos]];
        if c.a == v {
            c.chir.side()
        } else {
            c.chir.side().flip()
        }
    }

    /// The visit at the other end of the crossing reached by `v`.
    pub fn partner(&self, v: Visit) -> Visit {
        let c = &self.crossings[self.strands[v.strand][v.pos]];
        if c.a == v {
            c.b
        } else {
            c.a
        }
    }

    /// Relabels crossings 1.. in order of first encounter walking strands
    /// 1..n, and orders each record's visits so that `a < b`.
    pub fn canonical(&self) -> StrandDiagram {
        let mut order = vec![usize::MAX; self.crossings.len()];
        let mut next = 0;
        for list in &self.strands {
            for &c in list {
                if order[c] == usize::MAX {
                    order[c] = next;
                    next += 1;
                }
            }
        }
        let strands: Vec<Vec<usize>> =
            self.strands.iter().map(|l| l.iter().map(|&c| order[c]).collect()).collect();
        let mut crossings = vec![None; self.crossings.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            let (a, b, chir) = if c.a <= c.b { (c.a, c.b, c.chir) } else { (c.b, c.a, c.chir.flip()) };
            crossings[order[i]] = Some(Crossing { label: order[i] + 1, a, b, chir });
        }
        StrandDiagram {
            n: self.n,
            tau: self.tau.clone(),
            strands,
            crossings: crossings.into_iter().map(|c| c.expect("every crossing is visited")).collect(),
        }
    }

    /// Equality of the underlying maps. Marked points and strands are
    /// labeled, so an isomorphism is forced and equality of canonical forms
    /// decides it.
    pub fn is_isomorphic(&self, other: &StrandDiagram) -> bool {
        self.canonical() == other.canonical()
    }

    /// Removes the crossings whose indices are in `drop`, keeping labels.
    pub fn without_crossings(&self, drop: &[usize]) -> StrandDiagram {
        let mut keep = vec![usize::MAX; self.crossings.len()];
        let mut next = 0;
        for (i, k) in keep.iter_mut().enumerate() {
            if !drop.contains(&i) {
                *k = next;
                next += 1;
            }
        }
        let mut new_pos: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        let mut strands = Vec::with_capacity(self.n);
        for list in &self.strands {
            let mut pos = Vec::with_capacity(list.len());
            let mut kept = Vec::new();
            for &c in list {
                pos.push(kept.len());
                if keep[c] != usize::MAX {
                    kept.push(keep[c]);
                }
            }
            new_pos.push(pos);
            strands.push(kept);
        }
        let remap = |v: Visit| Visit::new(v.strand, new_pos[v.strand][v.pos]);
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i] != usize::MAX)
            .map(|(_, c)| Crossing { label: c.label, a: remap(c.a), b: remap(c.b), chir: c.chir })
            .collect();
        StrandDiagram { n: self.n, tau: self.tau.clone(), strands, crossings }
    }
}
