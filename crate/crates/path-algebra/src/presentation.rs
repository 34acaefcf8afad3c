use quiver_potential::{jacobian_relations, Cyc, Qp};

/// A path as a sequence of arrow ids in travel order.
pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathQuiver {
    pub n_vertices: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
}

impl PathQuiver {
    pub fn source(&self, a: u32) -> usize {
        self.arrows[a as usize].0
    }

    pub fn target(&self, a: u32) -> usize {
        self.arrows[a as usize].1
    }

    pub fn out_arrows(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n_vertices];
        for (a, &(s, _)) in self.arrows.iter().enumerate() {
            out[s].push(a as u32);
        }
        out
    }

    pub fn in_arrows(&self) -> Vec<Vec<u32>> {
        let mut inn = vec![Vec::new(); self.n_vertices];
        for (a, &(_, t)) in self.arrows.iter().enumerate() {
            inn[t].push(a as u32);
        }
        inn
    }

    pub fn is_path(&self, w: &[u32]) -> bool {
        w.windows(2).all(|p| self.target(p[0]) == self.source(p[1]))
    }
}

/// A linear relation among paths from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Word, Cyc)>,
}

impl Relation {
    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|t| t.0.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|t| t.0.len()).max().unwrap_or(0)
    }
}

/// Quiver with relations over the `order`-th cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: PathQuiver,
    pub relations: Vec<Relation>,
    pub order: usize,
}

impl Presentation {
    pub fn free(quiver: PathQuiver) -> Presentation {
        Presentation { quiver, relations: Vec::new(), order: 1 }
    }

    /// Cyclic derivatives of the potential with respect to internal arrows.
    pub fn jacobian(qp: &Qp) -> Presentation {
        let quiver = PathQuiver {
            n_vertices: qp.quiver.n_vertices(),
            arrows: qp.quiver.arrows.iter().map(|a| (a.source, a.target)).collect(),
        };
        let relations = jacobian_relations(&qp.quiver, &qp.potential)
            .into_iter()
            .filter(|(_, sum)| !sum.is_empty())
            .map(|(a, sum)| {
                let (s, t) = quiver.arrows[a];
                Relation {
                    source: t,
                    target: s,
                    terms: sum.into_iter().map(|(w, c)| (w.into_iter().map(|x| x as u32).collect(), c)).collect(),
                }
            })
            .collect();
        Presentation { quiver, relations, order: qp.potential.order }
    }

    /// The same presentation with the sign of one term of one relation
    /// flipped.
    pub fn with_flipped_sign(&self, relation: usize) -> Presentation {
        let mut p = self.clone();
        let t = &mut p.relations[relation].terms[0];
        t.1 = -t.1.clone();
        p
    }
}

/// Cyclic quiver on `m` vertices with `x_i: i-1 -> i` (arrow `2i`) and
/// `y_i: i -> i-1` (arrow `2i+1`), indices mod `m`, the preprojective
/// relations `x y = y x` at every vertex and `x^k = y^(n-k)`.
pub fn preprojective_presentation_g(m: usize, k: usize, n: usize) -> Presentation {
    let x = |i: usize| (2 * (i % m)) as u32;
    let y = |i: usize| (2 * (i % m) + 1) as u32;
    let arrows = (0..m).flat_map(|i| [((i + m - 1) % m, i), (i, (i + m - 1) % m)]).collect();
    let quiver = PathQuiver { n_vertices: m, arrows };
    let one = Cyc::one(1);
    let mut relations = Vec::new();
    for v in 0..m {
        relations.push(Relation {
            source: v,
            target: v,
            terms: vec![(vec![x(v + 1), y(v + 1)], one.clone()), (vec![y(v), x(v)], -one.clone())],
        });
        let xs: Word = (1..=k).map(|s| x(v + s)).collect();
        let ys: Word = (0..n - k).map(|s| y(v + m * n - s)).collect();
        relations.push(Relation { source: v, target: (v + k) % m, terms: vec![(xs, one.clone()), (ys, -one.clone())] });
    }
    Presentation { quiver, relations, order: 1 }
}

/// `B(k, n)`: the preprojective quotient on the `n`-cycle.
pub fn preprojective_presentation(n: usize, k: usize) -> Presentation {
    preprojective_presentation_g(n, k, n)
}
