use crate::{orbifold_labels_cover, orbifold_labels_direct, CoverLabels, DirectLabels, LabelError};
use orbifold_ops::OrbifoldDiagram;
use strand_map::FaceId;

/// Outcome of comparing the direct labels with the cover classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCheck {
    /// Faces whose direct label is not in the cover class.
    pub disagreeing: Vec<FaceId>,
    /// Split faces whose counterclockwise half is not the clockwise half
    /// shifted by `n0`.
    pub bad_halves: Vec<FaceId>,
    /// Cover crossings whose two alternating corners do not differ by one
    /// exchange.
    pub bad_exchanges: Vec<usize>,
    /// All labels have one size.
    pub constant_size: bool,
}

impl LabelCheck {
    pub fn passed(&self) -> bool {
        self.disagreeing.is_empty() && self.bad_halves.is_empty() && self.bad_exchanges.is_empty() && self.constant_size
    }
}

pub fn check_labels(direct: &DirectLabels, cover: &CoverLabels) -> LabelCheck {
    let mut disagreeing = Vec::new();
    for (f, class) in cover.classes.iter().enumerate() {
        let ok = match (class, direct.labels.get(f)) {
            (Some(c), Ok(l)) => c.contains(l),
            (None, Err(_)) => true,
            _ => false,
        };
        if !ok {
            disagreeing.push(f);
        }
    }
    let bad_halves = direct
        .halves
        .iter()
        .filter(|(_, cw, ccw)| cw.shifted(direct.n0, direct.n) != *ccw)
        .map(|h| h.0)
        .collect();
    let map = &cover.cover_map;
    let bad_exchanges = (0..cover.cover.diagram.n_crossings())
        .filter(|&c| {
            let corners = map.crossing_corners(c);
            let labelled: Vec<_> = corners.iter().filter_map(|&f| cover.cover_labels.get(f).ok()).collect();
            !labelled.iter().all(|a| labelled.iter().all(|b| a == b || a.symmetric_difference(b).len() == 2))
        })
        .collect();
    let constant_size = direct.labels.size().is_some() && cover.cover_labels.size().is_some();
    LabelCheck { disagreeing, bad_halves, bad_exchanges, constant_size }
}

pub fn cross_validate_labels(o: &OrbifoldDiagram) -> Result<LabelCheck, LabelError> {
    let direct = orbifold_labels_direct(o)?;
    let cover = orbifold_labels_cover(o)?;
    Ok(check_labels(&direct, &cover))
}
