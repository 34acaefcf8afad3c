use labeling::{LabelClass, Subset};
use std::fmt;
use strand_map::FaceId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Subset(Subset),
    Class(LabelClass),
}

impl VertexLabel {
    /// A subset standing for the label: the subset itself or the least
    /// member of the class.
    pub fn representative(&self) -> &Subset {
        match self {
            VertexLabel::Subset(s) => s,
            VertexLabel::Class(c) => c.canonical(),
        }
    }

    pub fn members(&self) -> Vec<Subset> {
        match self {
            VertexLabel::Subset(s) => vec![s.clone()],
            VertexLabel::Class(c) => c.members().to_vec(),
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Subset(s) => write!(f, "{s}"),
            VertexLabel::Class(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub face: FaceId,
    pub label: VertexLabel,
    pub frozen: bool,
    /// Copy index `1..=d` for the vertices of a split central region.
    pub copy: Option<usize>,
}

/// Where an arrow passes between two regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Crossing(usize),
    /// A marked boundary point, 0-based.
    Point(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub site: Site,
    pub copy: Option<usize>,
}

/// Fundamental cycle of a cyclic region, as arrows in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub face: FaceId,
    pub arrows: Vec<usize>,
    /// `+1` when the cycle runs counterclockwise.
    pub sign: i8,
    pub copy: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub cycles: Vec<Cycle>,
}

impl Quiver {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].frozen).collect()
    }

    /// Number of fundamental cycles through each arrow.
    pub fn cycle_incidence(&self) -> Vec<usize> {
        let mut count = vec![0; self.arrows.len()];
        for c in &self.cycles {
            for &a in &c.arrows {
                count[a] += 1;
            }
        }
        count
    }

    /// Arrows lying on two fundamental cycles.
    pub fn internal_arrows(&self) -> Vec<usize> {
        let inc = self.cycle_incidence();
        (0..self.arrows.len()).filter(|&a| inc[a] >= 2).collect()
    }

    pub fn is_internal(&self, a: usize) -> bool {
        self.cycle_incidence()[a] >= 2
    }

    /// Arrows of a sequence compose head to tail.
    pub fn is_path(&self, arrows: &[usize]) -> bool {
        arrows.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn is_cycle(&self, arrows: &[usize]) -> bool {
        !arrows.is_empty()
            && self.is_path(arrows)
            && self.arrows[*arrows.last().unwrap()].target == self.arrows[arrows[0]].source
    }

    /// Display name of an arrow: `a<id>`.
    pub fn arrow_name(&self, a: usize) -> String {
        format!("a{a}")
    }
}
