use std::hint::black_box;

use comin_bench::BENCH_SPACES;
use comin_core::{delta_i, describe_str, incidence_matrix, lr_coefficients, Space};
use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

// Every iteration gets a fresh `Space`, so the structure-constant memo starts cold.
fn fresh(name: &str) -> Space {
    Space::new(describe_str(name).unwrap()).unwrap()
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_space");
    for &name in BENCH_SPACES {
        let d = describe_str(name).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| Space::new(black_box(d.clone())).unwrap())
        });
    }
    g.finish();
}

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_products");
    g.sample_size(10);
    for &name in BENCH_SPACES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || fresh(name),
                |s| {
                    for &x in s.basis() {
                        for &y in s.basis().iter().filter(|&&y| y >= x) {
                            black_box(lr_coefficients(&s, x, y).unwrap());
                        }
                    }
                },
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

fn incidence(c: &mut Criterion) {
    let mut g = c.benchmark_group("incidence");
    for &name in BENCH_SPACES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || fresh(name),
                |s| black_box(incidence_matrix(&s).unwrap().nonzero_count()),
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

fn chain_numbers(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta_at_dim");
    g.sample_size(10);
    for &name in BENCH_SPACES {
        let i = describe_str(name).unwrap().dim;
        g.bench_function(BenchmarkId::new(name, i), |b| {
            b.iter_batched(
                || fresh(name),
                |s| black_box(delta_i(&s, i).unwrap()),
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, build, products, incidence, chain_numbers);
criterion_main!(benches);
