use orbifold_ops::{find_rotation, quotient, sym_d, OrbifoldDiagram};
use proptest::prelude::*;
use strand_map::osd::parse_osd;
use strand_map::{reduce, validate_postnikov, Move, StrandDiagram};

const EXAM2: &str = include_str!("../../../corpus/ex-exam2-order3.osd");
const ORDER5: &str = include_str!("../../../corpus/ex-4-10-order5.osd");
const FIXED: &str = include_str!("../../../corpus/ex-3-9-order3.osd");
const COVER2: &str = include_str!("../../../corpus/ex-exam2-cover2.osd");
const COVER3: &str = include_str!("../../../corpus/ex-exam2-cover3.osd");
const COVER5: &str = include_str!("../../../corpus/ex-4-10-cover.osd");
const COVER39: &str = include_str!("../../../corpus/ex-3-9-cover.osd");
const ORBIFOLDS: [&str; 3] = [EXAM2, ORDER5, FIXED];

fn orbifold(text: &str) -> OrbifoldDiagram {
    OrbifoldDiagram::from_osd(&parse_osd(text).unwrap()).unwrap()
}

fn postnikov(text: &str) -> StrandDiagram {
    parse_osd(text).unwrap().diagram
}

#[test]
fn exam2_windings() {
    let o = orbifold(EXAM2);
    let w = o.windings();
    assert_eq!([w.s(0), w.s(1), w.s(2)], [0, 1, 1]);
    assert_eq!(w.l(1, 2), 2);
    assert_eq!(w.l(2, 1), 2);
    assert_eq!(w.max_winding(), 2);
    assert!(o.is_orbifold().0);
    assert!(!o.with_order(2).unwrap().is_orbifold().0);
}

#[test]
fn order_five_windings() {
    let o = orbifold(ORDER5);
    let w = o.windings();
    assert_eq!((w.s(0), w.s(1), w.l(0, 1)), (2, 3, 4));
    assert_eq!(o.is_orbifold(), (true, 4));
    assert_eq!(o.grassmannian_type(), Some((4, 10, 2)));
}

#[test]
fn fixed_point_example_is_of_grassmannian_type() {
    let o = orbifold(FIXED);
    assert!(o.is_orbifold().0);
    assert_eq!(o.grassmannian_type(), Some((3, 9, 1)));
    assert_eq!(orbifold(EXAM2).grassmannian_type(), None);
}

#[test]
fn full_strand_windings_stay_below_the_order() {
    for text in [ORDER5, FIXED] {
        let o = orbifold(text);
        let d = o.order() as i64;
        for s in 0..o.n0() {
            let w = o.strand_winding(s);
            assert!(0 < w.abs() && w.abs() < d, "strand {s} winds {w}");
        }
    }
}

#[test]
fn covers_of_valid_orbifolds_are_postnikov_diagrams() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let cover = sym_d(&o, o.order());
        assert!(validate_postnikov(&cover.diagram).is_valid());
        assert_eq!(cover.diagram.n_points(), o.n0() * o.order());
        assert_eq!(cover.diagram.n_crossings(), o.base().n_crossings() * o.order());
    }
}

#[test]
fn cover_at_the_threshold_order_is_not_postnikov() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let threshold = o.windings().max_winding() as usize;
        if threshold < 2 {
            continue;
        }
        let report = validate_postnikov(&sym_d(&o, threshold).diagram);
        assert!(!report.passed(4) || !report.passed(5), "order {threshold}");
    }
}

#[test]
fn exam2_covers_match_the_bundled_files() {
    let o = orbifold(EXAM2);
    let two = sym_d(&o, 2).diagram;
    assert!(two.is_isomorphic(&postnikov(COVER2)));
    assert!(!validate_postnikov(&two).passed(4));
    assert!(reduce(&two).1.iter().any(|m| matches!(m, Move::Bigon { .. })));
    assert!(sym_d(&o, 3).diagram.is_isomorphic(&postnikov(COVER3)));
}

#[test]
fn quotient_then_cover_round_trips() {
    for (text, s) in [(COVER3, 3), (COVER5, 5), (COVER39, 3)] {
        let p = postnikov(text);
        let q = quotient(&p, s).unwrap();
        assert_eq!(q.order(), s);
        assert!(sym_d(&q, s).diagram.is_isomorphic(&p));
    }
}

#[test]
fn cover_then_quotient_round_trips() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let back = quotient(&sym_d(&o, o.order()).diagram, o.order()).unwrap();
        assert!(back.is_isomorphic(&o));
    }
}

#[test]
fn rotations_are_found_only_for_dividing_orders() {
    let p = postnikov(COVER5);
    let r = find_rotation(&p, 5).expect("5-symmetric");
    assert_eq!((r.order, r.shift), (5, 2));
    assert!(find_rotation(&p, 3).is_none());
    assert!(quotient(&p, 3).is_err());
}

#[test]
fn the_central_face_of_the_fixed_point_cover_is_rotation_invariant() {
    let p = postnikov(COVER39);
    let r = find_rotation(&p, 3).unwrap();
    let map = strand_map::StrandMap::build(&p).unwrap();
    assert!(r.fixed_face(&map).is_some());
}

#[test]
fn windings_do_not_depend_on_the_cut() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let rerouted = o.with_shortest_cut().unwrap();
        let via_cover = quotient(&sym_d(&o, o.order()).diagram, o.order()).unwrap();
        for other in [&rerouted, &via_cover] {
            let (a, b) = (o.windings(), other.windings());
            for s in 0..o.n0() {
                assert_eq!(a.s(s), b.s(s));
                for t in 0..o.n0() {
                    assert_eq!(a.l(s, t), b.l(s, t));
                }
            }
            assert_eq!(o.is_orbifold(), other.is_orbifold());
        }
    }
}

fn strand_nodes() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0usize..3, 0usize..3, any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_flat_map(|(f, s, a, b)| {
        let o = orbifold(ORBIFOLDS[f]);
        let s = s % o.n0();
        let last = o.base().strand(s).len() + 1;
        (Just(f), Just(s), Just(a.index(last + 1)), Just(b.index(last + 1)))
    })
}

proptest! {
    #[test]
    fn path_windings_add_up((f, s, a, b) in strand_nodes(), mid in any::<prop::sample::Index>()) {
        let o = orbifold(ORBIFOLDS[f]);
        let (from, to) = (a.min(b), a.max(b));
        let m = from + mid.index(to - from + 1);
        prop_assert_eq!(o.path_winding(s, from, m) + o.path_winding(s, m, to), o.path_winding(s, from, to));
    }

    #[test]
    fn covers_of_any_order_quotient_back(f in 0usize..3, d in 2usize..8) {
        let o = orbifold(ORBIFOLDS[f]).with_order(d).unwrap();
        let cover = sym_d(&o, d);
        prop_assert_eq!(cover.diagram.n_points(), o.n0() * d);
        let back = quotient(&cover.diagram, d).unwrap();
        prop_assert!(back.is_isomorphic(&o));
    }

    #[test]
    fn orbifold_verdict_is_monotone_in_the_order(f in 0usize..3, d in 2usize..9) {
        let o = orbifold(ORBIFOLDS[f]);
        let (ok, bound) = o.with_order(d).unwrap().is_orbifold();
        prop_assert_eq!(ok, d as i64 > bound);
        if ok && d > 2 {
            prop_assert!(validate_postnikov(&sym_d(&o, d).diagram).is_valid());
        }
    }
}
