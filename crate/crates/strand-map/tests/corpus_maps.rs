use proptest::prelude::*;
use strand_map::osd::{canonical, parse_osd, serialize_osd, Kind, OsdDocument};
use strand_map::{
    check_grassmannian, reduce, strand_sides, validate_postnikov, Chirality, Crossing, FaceKind, Move, StrandDiagram,
    StrandMap, Violation, Visit,
};

const CORPUS: [(&str, &str); 8] = [
    ("ex-3-9-cover", include_str!("../../../corpus/ex-3-9-cover.osd")),
    ("ex-3-9-order3", include_str!("../../../corpus/ex-3-9-order3.osd")),
    ("ex-4-10-cover", include_str!("../../../corpus/ex-4-10-cover.osd")),
    ("ex-4-10-order5", include_str!("../../../corpus/ex-4-10-order5.osd")),
    ("ex-exam2-cover2", include_str!("../../../corpus/ex-exam2-cover2.osd")),
    ("ex-exam2-cover3", include_str!("../../../corpus/ex-exam2-cover3.osd")),
    ("ex-exam2-order3", include_str!("../../../corpus/ex-exam2-order3.osd")),
    ("ex-perm-8", include_str!("../../../corpus/ex-perm-8.osd")),
];

const VALID_POSTNIKOV: [&str; 4] = ["ex-3-9-cover", "ex-4-10-cover", "ex-exam2-cover3", "ex-perm-8"];

fn doc(name: &str) -> OsdDocument {
    let text = CORPUS.iter().find(|c| c.0 == name).expect("corpus name").1;
    parse_osd(text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Vertices are crossings and marked points; edges are strand segments and
/// boundary arcs.
fn euler_faces(d: &StrandDiagram) -> usize {
    let n = d.n_points();
    let v = n + d.n_crossings();
    let e: usize = (0..n).map(|s| d.strand(s).len() + 1).sum::<usize>() + n;
    1 + e - v
}

#[test]
fn every_corpus_file_parses_with_its_declared_kind() {
    for (name, _) in CORPUS {
        let kind = doc(name).kind;
        assert_eq!(kind == Kind::Orbifold, name.contains("order"), "{name}");
    }
}

#[test]
fn serialization_is_a_fixed_point() {
    for (name, text) in CORPUS {
        let once = canonical(text).unwrap();
        assert_eq!(canonical(&once).unwrap(), once, "{name}");
        assert_eq!(parse_osd(&once).unwrap(), doc(name), "{name}");
    }
}

#[test]
fn face_count_matches_euler_characteristic() {
    for (name, _) in CORPUS {
        let d = doc(name).diagram;
        let map = StrandMap::build(&d).unwrap();
        assert_eq!(map.faces().len(), euler_faces(&d), "{name}");
    }
}

#[test]
fn valid_diagrams_have_one_boundary_face_per_arc_and_no_mixed_faces() {
    for name in VALID_POSTNIKOV {
        let d = doc(name).diagram;
        let map = StrandMap::build(&d).unwrap();
        let count = |k: FaceKind| map.faces().iter().filter(|f| f.kind == k).count();
        assert_eq!(count(FaceKind::Boundary), d.n_points(), "{name}");
        assert_eq!(count(FaceKind::Mixed), 0, "{name}");
        assert_eq!(
            count(FaceKind::Boundary) + count(FaceKind::Cyclic) + count(FaceKind::Alternating),
            map.faces().len()
        );
    }
}

#[test]
fn sides_alternate_along_every_strand_of_a_valid_diagram() {
    for name in VALID_POSTNIKOV {
        let d = doc(name).diagram;
        assert!(validate_postnikov(&d).is_valid(), "{name}");
        for s in 0..d.n_points() {
            let sides = strand_sides(&d, s);
            assert_eq!(sides.len(), d.strand(s).len() + 2);
            assert!(sides.windows(2).all(|w| w[0] != w[1]), "{name} strand {s}");
        }
    }
}

#[test]
fn grassmannian_types() {
    assert_eq!(check_grassmannian(&doc("ex-3-9-cover").diagram), Some((3, 9)));
    assert_eq!(check_grassmannian(&doc("ex-4-10-cover").diagram), Some((4, 10)));
    assert_eq!(check_grassmannian(&doc("ex-perm-8").diagram), None);
}

#[test]
fn two_fold_cover_fails_only_condition_four_and_reduces_by_a_bigon() {
    let d = doc("ex-exam2-cover2").diagram;
    let report = validate_postnikov(&d);
    assert_eq!(report.verdicts().map(|v| v.1), [true, true, true, false, true]);
    assert!(report.violations.iter().all(|v| matches!(v, Violation::DoubleCrossing { .. })));
    let (reduced, moves) = reduce(&d);
    assert!(moves.iter().any(|m| matches!(m, Move::Bigon { .. })));
    assert!(reduced.n_crossings() < d.n_crossings());
}

#[test]
fn reduce_is_idempotent_on_the_corpus() {
    for (name, _) in CORPUS {
        let (once, _) = reduce(&doc(name).diagram);
        let (twice, moves) = reduce(&once);
        assert!(moves.is_empty(), "{name}");
        assert_eq!(twice, once, "{name}");
    }
}

#[test]
fn valid_diagrams_are_already_reduced() {
    for name in VALID_POSTNIKOV {
        assert!(reduce(&doc(name).diagram).1.is_empty(), "{name}");
    }
}

#[test]
fn face_tracing_is_deterministic() {
    for (name, _) in CORPUS {
        let d = doc(name).diagram;
        let a = StrandMap::build(&d).unwrap();
        let b = StrandMap::build(&parse_osd(&serialize_osd(&doc(name))).unwrap().diagram).unwrap();
        assert_eq!(a.faces(), b.faces(), "{name}");
    }
}

#[test]
fn crossing_free_two_point_diagram() {
    let d = StrandDiagram::new(2, vec![1, 0], vec![vec![], vec![]], vec![]).unwrap();
    let map = StrandMap::build(&d).unwrap();
    assert_eq!(map.faces().len(), 3);
    assert_eq!(map.faces().iter().filter(|f| f.kind == FaceKind::Cyclic).count(), 1);
}

#[test]
fn constructor_rejects_inconsistent_records() {
    let cross = |a: Visit, b: Visit| Crossing { label: 1, a, b, chir: Chirality::SecondFromLeft };
    assert!(StrandDiagram::new(2, vec![0, 0], vec![vec![], vec![]], vec![]).is_err());
    assert!(StrandDiagram::new(2, vec![1, 0], vec![vec![0], vec![]], vec![cross(Visit::new(0, 0), Visit::new(1, 0))])
        .is_err());
}

#[test]
fn malformed_text_reports_its_position() {
    let text = "osd 1\nkind postnikov\npoints 2\nstrand 1: c1\nstrand 2: c1\ncrossing c1: a=(1,1) b=(2,1) chir=Q\n";
    let e = parse_osd(text).unwrap_err().to_string();
    assert!(e.starts_with("line 6, column "), "{e}");
}

fn relabel(d: &StrandDiagram, perm: &[usize]) -> StrandDiagram {
    let strands = (0..d.n_points()).map(|s| d.strand(s).iter().map(|&c| perm[c]).collect()).collect();
    let mut crossings = vec![None; d.n_crossings()];
    for (i, c) in d.crossings().iter().enumerate() {
        let swapped = Crossing { label: 100 + perm[i], a: c.b, b: c.a, chir: c.chir.flip() };
        crossings[perm[i]] = Some(if i % 2 == 0 { swapped } else { Crossing { label: 100 + perm[i], ..c.clone() } });
    }
    StrandDiagram::new(d.n_points(), d.tau().to_vec(), strands, crossings.into_iter().map(Option::unwrap).collect())
        .unwrap()
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..CORPUS.len()
}

proptest! {
    #[test]
    fn renumbering_crossings_preserves_the_map(i in corpus_index(), seed in any::<u64>()) {
        let d = doc(CORPUS[i].0).diagram;
        let mut perm: Vec<usize> = (0..d.n_crossings()).collect();
        let mut state = seed;
        for j in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(j, (state >> 33) as usize % (j + 1));
        }
        let e = relabel(&d, &perm);
        prop_assert!(e.is_isomorphic(&d));
        prop_assert_eq!(e.canonical(), d.canonical());
        let (a, b) = (StrandMap::build(&d).unwrap(), StrandMap::build(&e).unwrap());
        prop_assert_eq!(a.faces().len(), b.faces().len());
        prop_assert_eq!(validate_postnikov(&d).is_valid(), validate_postnikov(&e).is_valid());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(i in corpus_index(), gaps in proptest::collection::vec(0usize..3, 40)) {
        let text = CORPUS[i].1;
        let mut noisy = String::new();
        for (j, line) in text.lines().enumerate() {
            for _ in 0..gaps[j % gaps.len()] {
                noisy.push_str("  # note\n\n");
            }
            noisy.push_str(line);
            noisy.push_str("   \n");
        }
        prop_assert_eq!(parse_osd(&noisy).unwrap(), parse_osd(text).unwrap());
    }

    #[test]
    fn parsing_arbitrary_edits_never_panics(i in corpus_index(), at in any::<prop::sample::Index>(), junk in "[ -~]{0,4}") {
        let text = CORPUS[i].1;
        let cut = at.index(text.len());
        let cut = (0..=cut).rev().find(|&c| text.is_char_boundary(c)).unwrap_or(0);
        let edited = format!("{}{junk}{}", &text[..cut], &text[cut..]);
        if let Ok(d) = parse_osd(&edited) {
            let _ = StrandMap::build(&d.diagram);
            let _ = validate_postnikov(&d.diagram);
        }
    }
}
