use orbifold_ops::{sym_d, OrbifoldDiagram};
use path_algebra::{
    frozen_jacobian, preprojective_presentation, preprojective_quotient, rotation_action, skew_basic_dimensions,
    stable_radical_filtration, AlgebraError, CyclicAction, Echelon, GradedAlgebra, PathQuiver, Presentation, Relation,
    SparseVec, TruncatedPathAlgebra,
};
use proptest::prelude::*;
use quiver_potential::{qp_of_orbifold, qp_of_postnikov, Cyc, Qp};
use strand_map::osd::parse_osd;
use strand_map::StrandMap;

const EXAM2: &str = include_str!("../../../corpus/ex-exam2-order3.osd");
const ORDER5: &str = include_str!("../../../corpus/ex-4-10-order5.osd");
const FIXED: &str = include_str!("../../../corpus/ex-3-9-order3.osd");
const COVER5: &str = include_str!("../../../corpus/ex-4-10-cover.osd");
const COVER39: &str = include_str!("../../../corpus/ex-3-9-cover.osd");
const ORBIFOLDS: [&str; 3] = [EXAM2, ORDER5, FIXED];

fn orbifold(text: &str) -> OrbifoldDiagram {
    OrbifoldDiagram::from_osd(&parse_osd(text).unwrap()).unwrap()
}

fn postnikov_qp(text: &str) -> Qp {
    qp_of_postnikov(&parse_osd(text).unwrap().diagram).unwrap()
}

/// Number of paths of each length `0..=m`, from powers of the adjacency
/// matrix.
fn path_counts(q: &PathQuiver, m: usize) -> Vec<usize> {
    let n = q.n_vertices;
    let mut adj = vec![vec![0usize; n]; n];
    for &(s, t) in &q.arrows {
        adj[s][t] += 1;
    }
    let mut power: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let mut counts = Vec::new();
    for _ in 0..=m {
        counts.push(power.iter().flatten().sum());
        power = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * adj[k][j]).sum()).collect()).collect();
    }
    counts
}

fn cumulative(v: &[usize]) -> Vec<usize> {
    v.iter().scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    }).collect()
}

fn commutative_square() -> Presentation {
    let quiver = PathQuiver { n_vertices: 4, arrows: vec![(0, 1), (1, 3), (0, 2), (2, 3)] };
    let one = Cyc::one(1);
    let relation = Relation { source: 0, target: 3, terms: vec![(vec![0, 1], one.clone()), (vec![2, 3], -one)] };
    Presentation { quiver, relations: vec![relation], order: 1 }
}

#[test]
fn commutative_square_dimensions() {
    let a = TruncatedPathAlgebra::new(&commutative_square(), 3);
    assert_eq!(a.filtered_dimensions(), vec![4, 8, 9, 9]);
    assert_eq!(a.block_dim(0, 3, 2), 1);
    assert_eq!(a.normal_form(0, 3, &[0, 1], 2), a.normal_form(0, 3, &[2, 3], 2));
    let free = TruncatedPathAlgebra::new(&Presentation::free(commutative_square().quiver), 3);
    assert_eq!(free.filtered_dimensions(), vec![4, 8, 10, 10]);
}

#[test]
fn graded_engine_agrees_on_the_square() {
    let g = GradedAlgebra::new(&commutative_square(), &[1, 1, 1, 1], 4).unwrap();
    assert_eq!(g.dim(0, 3, 2), 1);
    assert_eq!(g.radical_filtration(&[0, 1, 2, 3], 3, 1).dims, vec![4, 8, 9, 9]);
    assert_eq!(g.radical_filtration(&[0, 3], 2, 1).dims, vec![2, 3, 3]);
}

#[test]
fn zero_weights_are_rejected() {
    assert_eq!(GradedAlgebra::new(&commutative_square(), &[1, 0, 1, 1], 4).err(), Some(AlgebraError::BadWeights));
    assert_eq!(GradedAlgebra::new(&commutative_square(), &[1, 1], 4).err(), Some(AlgebraError::BadWeights));
}

#[test]
fn truncation_below_the_relations_is_an_error() {
    let qp = qp_of_orbifold(&orbifold(ORDER5), 1).unwrap();
    assert!(matches!(frozen_jacobian(&qp, 2), Err(AlgebraError::DegreeTooSmall { .. })));
    let a = frozen_jacobian(&qp, 6).unwrap();
    assert!(a.sees_all_relations());
}

#[test]
fn completing_paths_agree_in_postnikov_jacobian_algebras() {
    for text in [COVER5, COVER39] {
        let qp = postnikov_qp(text);
        let p = Presentation::jacobian(&qp);
        let a = TruncatedPathAlgebra::new(&p, 6);
        for r in &p.relations {
            assert_eq!(r.terms.len(), 2);
            let j = r.max_len();
            let (x, y) = (&r.terms[0].0, &r.terms[1].0);
            assert_eq!(a.normal_form(r.source, r.target, x, j), a.normal_form(r.source, r.target, y, j));
        }
    }
}

#[test]
fn inverse_root_gives_the_same_dimensions() {
    for (text, inverse) in [(FIXED, 2), (ORDER5, 4), (EXAM2, 2)] {
        let o = orbifold(text);
        let a = frozen_jacobian(&qp_of_orbifold(&o, 1).unwrap(), 6).unwrap();
        let b = frozen_jacobian(&qp_of_orbifold(&o, inverse).unwrap(), 6).unwrap();
        assert_eq!(a.filtered_dimensions(), b.filtered_dimensions());
    }
}

#[test]
fn orbifold_algebras_match_the_skew_group_algebras_of_their_covers() {
    for text in ORBIFOLDS {
        let o = orbifold(text);
        let a = frozen_jacobian(&qp_of_orbifold(&o, 1).unwrap(), 6).unwrap();
        let cover = sym_d(&o, o.order());
        let cqp = qp_of_postnikov(&cover.diagram).unwrap();
        let map = StrandMap::build(&cover.diagram).unwrap();
        let g = rotation_action(&cqp, &map, &cover.rotation).unwrap();
        let p = Presentation::jacobian(&cqp);
        g.validate(&p).unwrap();
        assert!(g.permutes_relations(&p));
        let big = TruncatedPathAlgebra::new(&p, 6);
        assert_eq!(a.filtered_dimensions(), skew_basic_dimensions(&big, &g));
    }
}

#[test]
fn trivial_group_leaves_the_algebra_unchanged() {
    let qp = postnikov_qp(COVER39);
    let a = frozen_jacobian(&qp, 5).unwrap();
    let id = CyclicAction {
        order: 1,
        vertices: (0..qp.quiver.n_vertices()).collect(),
        arrows: (0..qp.quiver.n_arrows()).collect(),
    };
    assert_eq!(skew_basic_dimensions(&a, &id), a.filtered_dimensions());
}

#[test]
fn a_vertex_permutation_that_is_not_an_automorphism_is_rejected() {
    let p = commutative_square();
    let g = CyclicAction { order: 2, vertices: vec![1, 0, 2, 3], arrows: vec![0, 1, 2, 3] };
    assert_eq!(g.validate(&p), Err(AlgebraError::NotAutomorphism));
    let swap = CyclicAction { order: 3, vertices: vec![0, 2, 1, 3], arrows: vec![2, 3, 0, 1] };
    assert_eq!(swap.validate(&p), Err(AlgebraError::WrongOrder));
    let swap = CyclicAction { order: 2, ..swap };
    assert_eq!(swap.validate(&p), Ok(()));
    assert!(swap.permutes_relations(&p));
}

#[test]
fn preprojective_quotient_is_n_dimensional_in_degree_zero() {
    for (n, k) in [(6, 2), (9, 3), (10, 4)] {
        let b = preprojective_quotient(n, k, 2);
        let dims = b.filtered_dimensions();
        assert_eq!(dims[0], n);
        assert_eq!(dims[1], 3 * n);
    }
}

#[test]
fn boundary_algebra_of_the_order_five_cover() {
    let qp = postnikov_qp(COVER5);
    let w = qp.grading().unwrap();
    let report =
        stable_radical_filtration(&Presentation::jacobian(&qp), &w, &qp.quiver.frozen_vertices(), 8, 10).unwrap();
    assert!(report.stable);
    assert_eq!(report.dims, vec![10, 30, 60, 100, 140, 180, 220, 260, 300]);
}

#[test]
fn flipping_a_sign_changes_one_relation() {
    let p = preprojective_presentation(6, 2);
    let f = p.with_flipped_sign(1);
    assert_eq!(f.relations.len(), p.relations.len());
    let differ = (0..p.relations.len()).filter(|&r| p.relations[r] != f.relations[r]).count();
    assert_eq!(differ, 1);
}

fn quiver_strategy(acyclic: bool) -> impl Strategy<Value = PathQuiver> {
    (1usize..5).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..7).prop_map(move |arrows| {
            let arrows = if acyclic {
                arrows.into_iter().filter(|(s, t)| s < t).collect()
            } else {
                arrows
            };
            PathQuiver { n_vertices: n, arrows }
        })
    })
}

/// Every pair of parallel length-two paths commutes.
fn commutativity(q: &PathQuiver) -> Presentation {
    let one = Cyc::one(1);
    let mut relations = Vec::new();
    let pairs: Vec<(u32, u32)> = (0..q.arrows.len() as u32)
        .flat_map(|a| (0..q.arrows.len() as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| q.target(a) == q.source(b))
        .collect();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, e) in &pairs[i + 1..] {
            if q.source(a) == q.source(c) && q.target(b) == q.target(e) {
                relations.push(Relation {
                    source: q.source(a),
                    target: q.target(b),
                    terms: vec![(vec![a, b], one.clone()), (vec![c, e], -one.clone())],
                });
            }
        }
    }
    Presentation { quiver: q.clone(), relations, order: 1 }
}

fn float_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else { break };
        if m[p][c].abs() < 1e-9 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    m[r][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn free_algebras_count_paths(q in quiver_strategy(false), m in 0usize..4) {
        let a = TruncatedPathAlgebra::new(&Presentation::free(q.clone()), m);
        prop_assert_eq!(a.filtered_dimensions(), cumulative(&path_counts(&q, m)));
    }

    #[test]
    fn both_engines_agree_on_commutative_quotients(q in quiver_strategy(true)) {
        let p = commutativity(&q);
        let m = q.n_vertices;
        let a = TruncatedPathAlgebra::new(&p, m);
        let g = GradedAlgebra::new(&p, &vec![1; q.arrows.len()], m as u32 + 1).unwrap();
        let all: Vec<usize> = (0..q.n_vertices).collect();
        prop_assert_eq!(g.radical_filtration(&all, m, 1).dims, a.filtered_dimensions());
    }

    #[test]
    fn idempotent_dimensions_sum_over_blocks(q in quiver_strategy(false), m in 0usize..3) {
        let a = TruncatedPathAlgebra::new(&Presentation::free(q.clone()), m);
        let all: Vec<usize> = (0..q.n_vertices).collect();
        prop_assert_eq!(a.idempotent_dimensions(&all), a.filtered_dimensions());
    }

    #[test]
    fn echelon_rank_matches_floating_point(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 0..6)) {
        let mut e = Echelon::new();
        for r in &rows {
            let v: SparseVec = r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, Cyc::int(1, x))).collect();
            e.insert(v);
        }
        prop_assert_eq!(e.rank(), float_rank(&rows));
        for r in &rows {
            let v: SparseVec = r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, Cyc::int(1, x))).collect();
            prop_assert!(e.contains(v));
        }
    }
}
