use crate::{map_range, LabelError, Subset};
use strand_map::{FaceId, StrandDiagram, StrandMap};

/// Labels of the alternating and boundary faces; `None` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLabels {
    labels: Vec<Option<Subset>>,
}

impl FaceLabels {
    pub fn from_vec(labels: Vec<Option<Subset>>) -> FaceLabels {
        FaceLabels { labels }
    }

    pub fn get(&self, f: FaceId) -> Result<&Subset, LabelError> {
        self.labels.get(f).and_then(Option::as_ref).ok_or(LabelError::NotAlternating(f))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labelled faces in face order.
    pub fn iter(&self) -> impl Iterator<Item = (FaceId, &Subset)> {
        self.labels.iter().enumerate().filter_map(|(f, l)| l.as_ref().map(|l| (f, l)))
    }

    pub fn as_slice(&self) -> &[Option<Subset>] {
        &self.labels
    }

    /// Common size of all labels, if they agree.
    pub fn size(&self) -> Option<usize> {
        let mut it = self.iter().map(|(_, l)| l.len());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }
}

/// Faces on the left of each strand, as one boolean row per strand.
pub(crate) fn left_sides(map: &StrandMap, d: &StrandDiagram) -> Vec<Vec<bool>> {
    map_range(d.n_points(), |s| {
        let mut left = vec![false; map.faces().len()];
        for g in 0..d.n_segments(s) {
            let start = map.left_face(s, g);
            if left[start] {
                continue;
            }
            let reached = map.flood(start, |t, _| t == s);
            for (f, r) in reached.into_iter().enumerate() {
                left[f] |= r;
            }
        }
        left
    })
}

pub fn postnikov_labels(d: &StrandDiagram) -> Result<FaceLabels, LabelError> {
    let map = StrandMap::build(d)?;
    Ok(labels_on(&map, d))
}

pub(crate) fn labels_on(map: &StrandMap, d: &StrandDiagram) -> FaceLabels {
    let left = left_sides(map, d);
    let labels = map
        .faces()
        .iter()
        .map(|f| {
            f.kind
                .is_alternating_like()
                .then(|| Subset::new((0..d.n_points()).filter(|&s| left[s][f.id]).map(|s| s + 1)))
        })
        .collect();
    FaceLabels { labels }
}
