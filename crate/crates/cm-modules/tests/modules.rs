use cm_modules::{
    build_t, class_module, fold, hom_space, induce, is_isomorphic, rank_one, skew_end, verify_main, verify_presentation,
    EndAlgebra, ModuleError, Tag, VerifyError,
};
use labeling::{LabelClass, Subset};
use orbifold_ops::OrbifoldDiagram;
use path_algebra::Presentation;
use proptest::prelude::*;
use quiver_potential::qp_of_orbifold;
use strand_map::osd::parse_osd;

const EXAM2: &str = include_str!("../../../corpus/ex-exam2-order3.osd");
const ORDER5: &str = include_str!("../../../corpus/ex-4-10-order5.osd");
const FIXED: &str = include_str!("../../../corpus/ex-3-9-order3.osd");

fn orbifold(text: &str) -> OrbifoldDiagram {
    OrbifoldDiagram::from_osd(&parse_osd(text).unwrap()).unwrap()
}

fn set(xs: &[usize]) -> Subset {
    Subset::new(xs.iter().copied())
}

/// Maps `L_I -> L_J` multiply by `t^{e_v}` at vertex `v`; commuting with the
/// `x` arrows forces `e_v - e_{v-1} = [v in I] - [v in J]`, so the least
/// map has `e_0 = max_v (|J ∩ [1,v]| - |I ∩ [1,v]|)` and degree
/// `sum J - sum I + n e_0`.
fn expected_generator_degree(i: &Subset, j: &Subset, n: usize) -> i64 {
    let prefix = |s: &Subset, v: usize| s.elements().iter().filter(|&&x| x <= v).count() as i64;
    let e0 = (0..n).map(|v| prefix(j, v) - prefix(i, v)).max().unwrap();
    let sum = |s: &Subset| s.elements().iter().sum::<usize>() as i64;
    sum(j) - sum(i) + n as i64 * e0
}

#[test]
fn rank_one_modules_satisfy_the_relations() {
    let l = rank_one(&set(&[1, 2, 7]), 3, 9, 12).unwrap();
    assert_eq!(l.tag, Tag::B { k: 3, n: 9 });
    assert_eq!(l.total_rank(), 9);
    assert!(l.check().is_ok());
}

#[test]
fn bad_subsets_are_rejected() {
    assert!(matches!(rank_one(&set(&[1, 2]), 3, 9, 12), Err(ModuleError::BadSubset(_))));
    assert!(matches!(rank_one(&set(&[1, 2, 10]), 3, 9, 12), Err(ModuleError::BadSubset(_))));
    let class = LabelClass::of(&set(&[1, 2, 7]), 3, 3);
    assert!(matches!(class_module(&class, 3, &set(&[1, 2, 3]), 12), Err(ModuleError::BadRepresentative(_))));
}

#[test]
fn modules_over_different_algebras_have_no_hom_space() {
    let a = rank_one(&set(&[1, 2]), 2, 5, 6).unwrap();
    let b = rank_one(&set(&[1, 2]), 2, 6, 6).unwrap();
    assert_eq!(hom_space(&a, &b).err(), Some(ModuleError::WrongAlgebra));
    let c = rank_one(&set(&[1, 2]), 2, 5, 7).unwrap();
    assert_eq!(hom_space(&a, &c).err(), Some(ModuleError::TruncationMismatch));
}

#[test]
fn representatives_of_one_class_give_isomorphic_modules() {
    let class = LabelClass::of(&set(&[1, 2, 7]), 3, 3);
    let a = class_module(&class, 3, &set(&[1, 2, 7]), 12).unwrap();
    let b = class_module(&class, 3, &set(&[1, 4, 5]), 12).unwrap();
    assert!(is_isomorphic(&a, &b).unwrap());
    assert!(is_isomorphic(&b, &a).unwrap());
}

#[test]
fn the_central_class_module_splits() {
    let class = LabelClass::of(&set(&[1, 4, 7]), 3, 3);
    assert_eq!(class.size(), 1);
    let m = class_module(&class, 3, &set(&[1, 4, 7]), 12).unwrap();
    assert_eq!(hom_space(&m, &m).unwrap().rank(), 3);
}

#[test]
fn twisting_by_n0_subtracts_n0_from_the_label() {
    let i = set(&[1, 2, 7]);
    let twisted = rank_one(&i, 3, 9, 8).unwrap().twist(3);
    let expected = rank_one(&i.shifted(6, 9), 3, 9, 8).unwrap();
    assert!(is_isomorphic(&twisted, &expected).unwrap());
    assert!(twisted.check().is_ok());
}

#[test]
fn skew_end_matches_the_endomorphism_algebra_of_t() {
    for (text, expected) in [(FIXED, 1764), (ORDER5, 1500)] {
        let o = orbifold(text);
        let qp = qp_of_orbifold(&o, 1).unwrap();
        let t = build_t(&qp, 12).unwrap();
        assert_eq!(t.end.dim(), expected);
        let cover = labeling::orbifold_labels_cover(&o).unwrap();
        let labels: Vec<Subset> = cover.cover_labels.iter().map(|(_, s)| s.clone()).collect();
        let r2 = skew_end(&labels, labels[0].len(), o.n0() * o.order(), o.n0(), 12).unwrap();
        assert!(r2.full);
        assert_eq!(r2.dim, expected);
    }
}

#[test]
fn skew_end_needs_a_rotation_invariant_label_set() {
    let labels = [set(&[1, 2]), set(&[2, 3])];
    assert!(matches!(skew_end(&labels, 2, 6, 2, 6), Err(ModuleError::NotSymmetric)));
}

#[test]
fn end_algebra_idempotents_are_orthogonal_and_sum_to_one() {
    let ms: Vec<_> = [[1, 2], [2, 3], [1, 4]].iter().map(|s| rank_one(&set(s), 2, 5, 4).unwrap()).collect();
    let end = EndAlgebra::new(ms).unwrap();
    let ids: Vec<_> = (0..3).map(|u| end.identity(u).unwrap()).collect();
    let one = ids.iter().fold(Default::default(), |acc, x| EndAlgebra::add(&acc, x));
    for u in 0..3 {
        for v in 0..3 {
            let p = end.mul(&ids[u], &ids[v]);
            if u == v {
                assert_eq!(p, ids[u]);
            } else {
                assert!(p.is_empty());
            }
        }
    }
    for u in 0..3 {
        for v in 0..3 {
            for f in &end.hom(u, v).generators {
                let x = end.element(u, v, f).unwrap();
                assert_eq!(end.mul(&one, &x), x);
                assert_eq!(end.mul(&x, &one), x);
            }
        }
    }
}

#[test]
fn main_certificate_passes_on_the_corpus() {
    for text in [FIXED, ORDER5, EXAM2] {
        let report = verify_main(&orbifold(text), 6, 12).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
        assert_eq!(report.end_filtered, report.algebra_filtered);
        assert_eq!(report.end_filtered.len(), 7);
    }
}

#[test]
fn a_flipped_sign_is_detected() {
    for text in [FIXED, ORDER5] {
        let qp = qp_of_orbifold(&orbifold(text), 1).unwrap();
        let flipped = Presentation::jacobian(&qp).with_flipped_sign(0);
        let report = verify_presentation(&qp, &flipped, 6, 12).unwrap();
        assert!(!report.passed());
        assert!(report.failures().iter().any(|f| matches!(f, VerifyError::DimensionMismatch { .. })));
    }
}

#[test]
fn truncation_must_exceed_the_path_length() {
    let err = verify_main(&orbifold(ORDER5), 6, 2).unwrap_err();
    assert!(matches!(err, VerifyError::TruncationTooSmall { .. }));
}

fn subset(n: usize, k: usize) -> impl Strategy<Value = Subset> {
    proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(Subset::new)
}

fn two_subsets() -> impl Strategy<Value = (usize, usize, Subset, Subset)> {
    (4usize..9).prop_flat_map(|n| (1..n).prop_flat_map(move |k| (Just(n), Just(k), subset(n, k), subset(n, k))))
}

fn class_pair() -> impl Strategy<Value = (usize, usize, usize, Subset, Subset)> {
    (1usize..4, 2usize..4).prop_flat_map(|(n0, d)| {
        let n = n0 * d;
        (1..n).prop_flat_map(move |k| (Just(n0), Just(d), Just(k), subset(n, k), subset(n, k)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_one_hom_spaces_are_free_of_rank_one((n, k, i, j) in two_subsets(), truncation in 2usize..6) {
        let (a, b) = (rank_one(&i, k, n, truncation).unwrap(), rank_one(&j, k, n, truncation).unwrap());
        let h = hom_space(&a, &b).unwrap();
        prop_assert_eq!(h.rank(), 1);
        prop_assert_eq!(h.truncated_dim(), truncation);
        prop_assert_eq!(h.generators[0].degree, expected_generator_degree(&i, &j, n));
    }

    #[test]
    fn rank_one_modules_are_isomorphic_only_when_equal((n, k, i, j) in two_subsets()) {
        let (a, b) = (rank_one(&i, k, n, 4).unwrap(), rank_one(&j, k, n, 4).unwrap());
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), i == j);
    }

    #[test]
    fn composition_of_generators_is_a_power_of_t_times_a_generator((n, k, i, j) in two_subsets(), third in any::<prop::sample::Index>()) {
        let l = {
            let mut e: Vec<usize> = (1..=n).collect();
            e.rotate_left(third.index(n));
            Subset::new(e.into_iter().take(k))
        };
        let ms: Vec<_> = [&i, &j, &l].iter().map(|s| rank_one(s, k, n, 8).unwrap()).collect();
        let f = hom_space(&ms[0], &ms[1]).unwrap().generators[0].clone();
        let g = hom_space(&ms[1], &ms[2]).unwrap().generators[0].clone();
        let h = hom_space(&ms[0], &ms[2]).unwrap();
        let parts = h.decompose(&f.then(&g));
        prop_assert!(parts.is_ok());
        let parts = parts.unwrap();
        prop_assert!(parts.len() <= 1);
        if let Some(&(gen, power, ref c)) = parts.first() {
            prop_assert_eq!(gen, 0);
            prop_assert!(c.is_one());
            prop_assert_eq!(h.generators[0].degree + (power as i64) * n as i64, f.degree + g.degree);
        }
    }

    #[test]
    fn induction_agrees_with_folding((n0, d, k, i, _) in class_pair()) {
        let l = rank_one(&i, k, n0 * d, 4).unwrap();
        let induced = induce(&l, n0).unwrap();
        prop_assert!(induced.check().is_ok());
        prop_assert!(is_isomorphic(&induced, &fold(&l, n0).unwrap()).unwrap());
    }

    #[test]
    fn class_modules_are_isomorphic_exactly_for_equal_classes((n0, d, k, i, j) in class_pair()) {
        let (ci, cj) = (LabelClass::of(&i, n0, d), LabelClass::of(&j, n0, d));
        let a = class_module(&ci, k, &i, 4).unwrap();
        let b = class_module(&cj, k, &j, 4).unwrap();
        prop_assert!(a.check().is_ok());
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), ci == cj);
        let end = hom_space(&a, &a).unwrap();
        prop_assert_eq!(end.rank(), d);
        let other = class_module(&ci, k, &ci.canonical().clone(), 4).unwrap();
        prop_assert_eq!(hom_space(&other, &other).unwrap().rank(), end.rank());
    }
}
