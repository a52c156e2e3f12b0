use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ncalg::ainf::{check_stasheff, merkulov_model, SplittingPolicy};
use ncalg::barext::betti_minimal;
use ncalg::classify::regularity_screen;
use ncalg::complete;
use ncalg_bench::{regular_a, regular_d};

fn rewriting(c: &mut Criterion) {
    let p = regular_a(2);
    c.bench_function("complete A(2) to degree 10", |b| b.iter(|| complete(black_box(&p), 10).unwrap()));
    let sys = complete(&p, 12).unwrap();
    c.bench_function("hilbert A(2) to degree 12", |b| b.iter(|| sys.hilbert_coeffs(black_box(12)).unwrap()));
}

fn ext(c: &mut Criterion) {
    let p = regular_d(3, 2);
    let sys = complete(&p, 8).unwrap();
    c.bench_function("betti D(3,2) s<=4 adams<=8", |b| b.iter(|| betti_minimal(black_box(&sys), 4, 8).unwrap()));
}

fn model(c: &mut Criterion) {
    let p = regular_a(2);
    let sys = complete(&p, 7).unwrap();
    let mut g = c.benchmark_group("model");
    g.sample_size(10);
    for policy in [SplittingPolicy::Structured, SplittingPolicy::Echelon] {
        g.bench_function(format!("A(2) {policy:?}"), |b| b.iter(|| merkulov_model(black_box(&sys), 4, 7, policy).unwrap()));
    }
    let st = merkulov_model(&sys, 4, 7, SplittingPolicy::Echelon).unwrap();
    g.bench_function("stasheff arity 7", |b| b.iter(|| check_stasheff(black_box(&st), 7, true).unwrap()));
    g.bench_function("screen A(2)", |b| b.iter(|| regularity_screen(black_box(&p), 10).unwrap()));
    g.finish();
}

criterion_group!(benches, rewriting, ext, model);
criterion_main!(benches);
