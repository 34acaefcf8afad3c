use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbifold_ops::OrbifoldDiagram;
use path_algebra::{frozen_jacobian, preprojective_quotient, stable_radical_filtration, preprojective_presentation};
use quiver_potential::{qp_of_orbifold, qp_of_postnikov, Qp};
use strand_map::osd::parse_osd;

const COVER5: &str = include_str!("../../../corpus/ex-4-10-cover.osd");
const COVER39: &str = include_str!("../../../corpus/ex-3-9-cover.osd");
const ORDER5: &str = include_str!("../../../corpus/ex-4-10-order5.osd");

fn cover_qp(text: &str) -> Qp {
    qp_of_postnikov(&parse_osd(text).unwrap().diagram).unwrap()
}

fn orbifold_qp(text: &str) -> Qp {
    qp_of_orbifold(&OrbifoldDiagram::from_osd(&parse_osd(text).unwrap()).unwrap(), 1).unwrap()
}

/// A single-thread pool and the default pool.
fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn jacobian(c: &mut Criterion) {
    let inputs = [("cover-4-10", cover_qp(COVER5)), ("cover-3-9", cover_qp(COVER39)), ("orbifold-4-10", orbifold_qp(ORDER5))];
    let mut group = c.benchmark_group("frozen_jacobian");
    group.sample_size(10);
    for (mode, pool) in pools() {
        for (name, qp) in &inputs {
            group.bench_with_input(BenchmarkId::new(mode, name), qp, |b, qp| {
                b.iter(|| pool.install(|| frozen_jacobian(qp, 6).unwrap()))
            });
        }
    }
    group.finish();
}

fn boundary(c: &mut Criterion) {
    let mut group = c.benchmark_group("boundary");
    group.sample_size(10);
    let p = preprojective_presentation(10, 4);
    for (mode, pool) in pools() {
        group.bench_function(BenchmarkId::new(mode, "quotient-4-10"), |b| {
            b.iter(|| pool.install(|| preprojective_quotient(10, 4, 8)))
        });
        group.bench_function(BenchmarkId::new(mode, "radical-4-10"), |b| {
            b.iter(|| {
                pool.install(|| {
                    let weights: Vec<u32> = (0..20).map(|a| if a % 2 == 0 { 6 } else { 4 }).collect();
                    stable_radical_filtration(&p, &weights, &[0], 6, 10).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, jacobian, boundary);
criterion_main!(benches);
