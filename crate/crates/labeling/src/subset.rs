use std::fmt;

/// A subset of `{1, .., n}`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new(elements: impl IntoIterator<Item = usize>) -> Subset {
        let mut v: Vec<usize> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Pointwise `+ by`, read in `{1, .., n}`.
    pub fn shifted(&self, by: usize, n: usize) -> Subset {
        Subset::new(self.0.iter().map(|&i| (i - 1 + by) % n + 1))
    }

    /// Elements in exactly one of the two sets.
    pub fn symmetric_difference(&self, other: &Subset) -> Vec<usize> {
        let mut out: Vec<usize> = self.0.iter().filter(|i| !other.contains(**i)).copied().collect();
        out.extend(other.0.iter().filter(|i| !self.contains(**i)));
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Orbit of a subset under pointwise `+ n0` on `{1, .., n0 d}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelClass {
    n0: usize,
    d: usize,
    members: Vec<Subset>,
}

impl LabelClass {
    pub fn of(rep: &Subset, n0: usize, d: usize) -> LabelClass {
        let n = n0 * d;
        let mut members = vec![rep.clone()];
        let mut cur = rep.shifted(n0, n);
        while cur != *rep {
            members.push(cur.clone());
            cur = cur.shifted(n0, n);
        }
        members.sort();
        LabelClass { n0, d, members }
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn order(&self) -> usize {
        self.d
    }

    /// Lexicographically least member.
    pub fn canonical(&self) -> &Subset {
        &self.members[0]
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Number of rotations fixing each member.
    pub fn stabilizer(&self) -> usize {
        self.d / self.members.len()
    }
}

impl fmt::Display for LabelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.canonical(), self.n0)
    }
}
