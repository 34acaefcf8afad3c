use crate::postnikov::labels_on;
use crate::{FaceLabels, LabelClass, LabelError};
use orbifold_ops::{sym_d, Cover, OrbifoldDiagram};
use strand_map::{validate_postnikov, FaceId, StrandMap};

/// Labels of an orbifold diagram read off its cover.
#[derive(Clone, Debug)]
pub struct CoverLabels {
    pub cover: Cover,
    pub cover_map: StrandMap,
    pub cover_labels: FaceLabels,
    /// Per base face, the cover faces above it.
    pub lifts: Vec<Vec<FaceId>>,
    /// Per base face, the class of its lifts' labels.
    pub classes: Vec<Option<LabelClass>>,
}

impl CoverLabels {
    pub fn class(&self, f: FaceId) -> Result<&LabelClass, LabelError> {
        self.classes.get(f).and_then(Option::as_ref).ok_or(LabelError::NotAlternating(f))
    }
}

pub fn orbifold_labels_cover(o: &OrbifoldDiagram) -> Result<CoverLabels, LabelError> {
    let d = o.order();
    let n0 = o.n0();
    let cover = sym_d(o, d);
    let report = validate_postnikov(&cover.diagram);
    if !report.is_valid() {
        let mut failed: Vec<u8> = report.violations.iter().map(|v| v.condition()).collect();
        failed.sort_unstable();
        failed.dedup();
        return Err(LabelError::CoverInvalid(failed));
    }
    let base_map = o.map();
    let cover_map = StrandMap::build(&cover.diagram)?;
    let cover_labels = labels_on(&cover_map, &cover.diagram);
    let mut lifts = vec![Vec::new(); base_map.faces().len()];
    for f in cover_map.faces() {
        lifts[cover.project_face(&cover_map, &base_map, f.id)].push(f.id);
    }
    let mut classes = Vec::with_capacity(lifts.len());
    for (f, up) in lifts.iter().enumerate() {
        if !base_map.face(f).kind.is_alternating_like() {
            classes.push(None);
            continue;
        }
        let first = cover_labels.get(up[0])?;
        let class = LabelClass::of(first, n0, d);
        for &g in up {
            if !class.contains(cover_labels.get(g)?) {
                return Err(LabelError::NotSymmetric(f));
            }
        }
        classes.push(Some(class));
    }
    Ok(CoverLabels { cover, cover_map, cover_labels, lifts, classes })
}
