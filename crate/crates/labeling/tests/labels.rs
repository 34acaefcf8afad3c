use labeling::{
    check_labels, cross_validate_labels, orbifold_labels_cover, orbifold_labels_direct, postnikov_labels, FaceLabels,
    LabelClass, Subset,
};
use orbifold_ops::{sym_d, OrbifoldDiagram};
use proptest::prelude::*;
use strand_map::osd::parse_osd;
use strand_map::{FaceKind, StrandDiagram, StrandMap};

const EXAM2: &str = include_str!("../../../corpus/ex-exam2-order3.osd");
const ORDER5: &str = include_str!("../../../corpus/ex-4-10-order5.osd");
const FIXED: &str = include_str!("../../../corpus/ex-3-9-order3.osd");
const COVER5: &str = include_str!("../../../corpus/ex-4-10-cover.osd");
const COVER39: &str = include_str!("../../../corpus/ex-3-9-cover.osd");
const PERM8: &str = include_str!("../../../corpus/ex-perm-8.osd");
const ORBIFOLDS: [&str; 3] = [EXAM2, ORDER5, FIXED];

fn orbifold(text: &str) -> OrbifoldDiagram {
    OrbifoldDiagram::from_osd(&parse_osd(text).unwrap()).unwrap()
}

fn postnikov(text: &str) -> StrandDiagram {
    parse_osd(text).unwrap().diagram
}

/// No `a < b < c < d` in cyclic order with `a, c` in `I \ J` and `b, d` in
/// `J \ I`: the two differences alternate at most twice around the circle.
fn weakly_separated(i: &Subset, j: &Subset, n: usize) -> bool {
    let pattern: Vec<bool> = (1..=n)
        .filter(|x| i.contains(*x) != j.contains(*x))
        .map(|x| i.contains(x))
        .collect();
    let changes = (0..pattern.len()).filter(|&p| pattern[p] != pattern[(p + 1) % pattern.len()]).count();
    changes <= 2
}

fn cyclic_interval(s: &Subset, n: usize) -> bool {
    let k = s.len();
    (1..=n).any(|start| *s == Subset::new((0..k).map(|t| (start - 1 + t) % n + 1)))
}

#[test]
fn grassmannian_labels_form_a_maximal_weakly_separated_collection() {
    for (text, k, n) in [(COVER5, 4, 10), (COVER39, 3, 9)] {
        let d = postnikov(text);
        let labels = postnikov_labels(&d).unwrap();
        let all: Vec<&Subset> = labels.iter().map(|(_, s)| s).collect();
        assert_eq!(all.len(), k * (n - k) + 1);
        assert_eq!(labels.size(), Some(k));
        for a in &all {
            for b in &all {
                assert!(weakly_separated(a, b, n), "{a} and {b}");
            }
        }
        let mut distinct = all.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn boundary_faces_carry_the_cyclic_intervals() {
    for (text, n) in [(COVER5, 10), (COVER39, 9)] {
        let d = postnikov(text);
        let map = StrandMap::build(&d).unwrap();
        let labels = postnikov_labels(&d).unwrap();
        let mut boundary: Vec<Subset> = map
            .faces()
            .iter()
            .filter(|f| f.kind == FaceKind::Boundary)
            .map(|f| labels.get(f.id).unwrap().clone())
            .collect();
        assert!(boundary.iter().all(|s| cyclic_interval(s, n)));
        boundary.sort();
        boundary.dedup();
        assert_eq!(boundary.len(), n);
    }
}

#[test]
fn neighbouring_faces_exchange_one_element() {
    for text in [COVER5, COVER39, PERM8] {
        let d = postnikov(text);
        let map = StrandMap::build(&d).unwrap();
        let labels = postnikov_labels(&d).unwrap();
        for c in 0..d.n_crossings() {
            let around: Vec<&Subset> = map.crossing_corners(c).iter().filter_map(|&f| labels.get(f).ok()).collect();
            for a in &around {
                for b in &around {
                    assert!(a == b || a.symmetric_difference(b).len() == 2);
                }
            }
        }
    }
}

#[test]
fn cyclic_faces_have_no_label() {
    let d = postnikov(COVER5);
    let map = StrandMap::build(&d).unwrap();
    let labels = postnikov_labels(&d).unwrap();
    for f in map.faces() {
        assert_eq!(labels.get(f.id).is_ok(), f.kind.is_alternating_like(), "face {}", f.id);
    }
}

#[test]
fn symmetric_cover_labels_are_closed_under_the_shift() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let cover = sym_d(&o, o.order()).diagram;
        let labels = postnikov_labels(&cover).unwrap();
        let set: Vec<&Subset> = labels.iter().map(|(_, s)| s).collect();
        let n = cover.n_points();
        for s in &set {
            assert!(set.contains(&&s.shifted(o.n0(), n)), "{s}");
        }
    }
}

#[test]
fn direct_algorithm_on_the_order_five_example() {
    let d = orbifold_labels_direct(&orbifold(ORDER5)).unwrap();
    assert_eq!((d.n0, d.n), (2, 10));
    assert_eq!(d.missing, vec![3, 5, 10]);
    assert_eq!(d.added, vec![10]);
    assert_eq!(d.labels.size(), Some(4));
}

#[test]
fn direct_algorithm_on_exam2() {
    let d = orbifold_labels_direct(&orbifold(EXAM2)).unwrap();
    assert_eq!(d.missing, vec![5, 7, 9]);
    assert_eq!(d.added, vec![7, 9]);
}

#[test]
fn direct_and_cover_labels_agree() {
    for text in ORBIFOLDS {
        let check = cross_validate_labels(&orbifold(text)).unwrap();
        assert!(check.passed(), "{check:?}");
    }
}

#[test]
fn a_corrupted_direct_label_is_caught() {
    let o = orbifold(ORDER5);
    let cover = orbifold_labels_cover(&o).unwrap();
    let mut direct = orbifold_labels_direct(&o).unwrap();
    let mut raw = direct.labels.as_slice().to_vec();
    let (f, label) = raw.iter().enumerate().find_map(|(f, l)| l.clone().map(|l| (f, l))).unwrap();
    let first = label.elements()[0];
    let swap = (1..=direct.n).find(|x| !label.contains(*x)).unwrap();
    raw[f] = Some(Subset::new(label.elements().iter().map(|&x| if x == first { swap } else { x })));
    direct.labels = FaceLabels::from_vec(raw);
    let check = check_labels(&direct, &cover);
    assert!(!check.passed());
    assert_eq!(check.disagreeing, vec![f]);
}

#[test]
fn the_fixed_point_example_has_one_central_class() {
    let cover = orbifold_labels_cover(&orbifold(FIXED)).unwrap();
    let central: Vec<&LabelClass> = cover.classes.iter().flatten().filter(|c| c.size() == 1).collect();
    assert_eq!(central.len(), 1);
    assert_eq!(central[0].canonical(), &Subset::new([1, 4, 7]));
    assert_eq!(central[0].stabilizer(), 3);
}

#[test]
fn class_display() {
    let c = LabelClass::of(&Subset::new([1, 2, 7]), 3, 3);
    assert_eq!(c.to_string(), "[{1,2,7}]_3");
    assert_eq!(c.members().len(), 3);
    assert!(c.contains(&Subset::new([1, 4, 5])));
}

fn subset_strategy() -> impl Strategy<Value = (Subset, usize, usize)> {
    (1usize..5, 1usize..6).prop_flat_map(|(n0, d)| {
        let n = n0 * d;
        (proptest::collection::btree_set(1..=n, 1..=n), Just(n0), Just(d))
            .prop_map(|(s, n0, d)| (Subset::new(s), n0, d))
    })
}

proptest! {
    #[test]
    fn label_class_invariants((rep, n0, d) in subset_strategy()) {
        let n = n0 * d;
        let class = LabelClass::of(&rep, n0, d);
        prop_assert!(class.contains(&rep));
        prop_assert_eq!(class.size() * class.stabilizer(), d);
        prop_assert_eq!(d % class.size(), 0);
        for m in class.members() {
            prop_assert_eq!(m.len(), rep.len());
            prop_assert!(class.contains(&m.shifted(n0, n)));
            prop_assert!(class.canonical() <= m);
            prop_assert_eq!(&LabelClass::of(m, n0, d), &class);
        }
        prop_assert_eq!(class.size() == 1, rep.shifted(n0, n) == rep);
    }

    #[test]
    fn shifting_by_n_is_the_identity((rep, n0, d) in subset_strategy(), t in 0usize..4) {
        let n = n0 * d;
        prop_assert_eq!(rep.shifted(n * t, n), rep.clone());
        prop_assert_eq!(rep.shifted(n0, n).shifted(n - n0, n), rep);
    }

    #[test]
    fn symmetric_difference_is_symmetric(a in proptest::collection::btree_set(1usize..12, 0..8), b in proptest::collection::btree_set(1usize..12, 0..8)) {
        let (x, y) = (Subset::new(a.clone()), Subset::new(b.clone()));
        let expected: Vec<usize> = a.symmetric_difference(&b).copied().collect();
        prop_assert_eq!(x.symmetric_difference(&y), expected.clone());
        prop_assert_eq!(y.symmetric_difference(&x), expected);
    }
}
