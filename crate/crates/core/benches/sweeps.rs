use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use thom_core::chern::{a1_thom, expand_product_schur, Variance};
use thom_core::grassmannian::CoefficientExtractor;
use thom_core::thom::{corank_thom, d_positivity_table};
use thom_core::Partition;

fn corank_sweep() {
    for q in 1..=5 {
        for m in q..=6 {
            black_box(corank_thom(q, m).unwrap());
        }
    }
}

fn d_table_sweep() {
    black_box(d_positivity_table(6, 2));
}

fn extraction_sweep() {
    let t = a1_thom(3, 6).unwrap();
    let ex = CoefficientExtractor::new(&t, &[4, 4]).unwrap();
    let keys: Vec<Vec<Partition>> = (0..=4)
        .flat_map(|a| {
            Partition::of_weight(a).into_iter().flat_map(move |i| {
                Partition::of_weight(4 - a).into_iter().map(move |j| vec![i.clone(), j])
            })
        })
        .filter(|k| k[0].len() <= 3 && k[1].len() <= 6)
        .collect();
    black_box(ex.coefficients(&keys).unwrap());
}

fn expansion_sweep() {
    let t = a1_thom(4, 8).unwrap();
    black_box(expand_product_schur(&t, &[Variance::Dual, Variance::Plain]).unwrap());
}

const SWEEPS: [(&str, fn()); 4] = [
    ("corank_q5_m6", corank_sweep),
    ("d_table_q6", d_table_sweep),
    ("extract_a1_3_6", extraction_sweep),
    ("expand_a1_4_8", expansion_sweep),
];

#[cfg(feature = "parallel")]
fn sweeps(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("sweeps");
    for (name, f) in SWEEPS {
        group.bench_with_input(BenchmarkId::new("rayon", name), &f, |b, f| b.iter(f));
        group.bench_with_input(BenchmarkId::new("single_thread", name), &f, |b, f| b.iter(|| single.install(f)));
    }
    group.finish();
}

#[cfg(not(feature = "parallel"))]
fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    for (name, f) in SWEEPS {
        group.bench_with_input(BenchmarkId::new("sequential", name), &f, |b, f| b.iter(f));
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
