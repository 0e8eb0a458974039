use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gsl_core::config::Caps;
use gsl_core::fuzzy::enumerate_fuzzy_ideals;
use gsl_core::matrix::build_matrix_gamma;
use gsl_core::structure::{boolean, zn};
use gsl_core::{GradeChain, IdealKind};

// Same workload on a one-thread pool and on the default pool. Built with
// `--no-default-features` both rows run the sequential fallback.
fn pools(c: &mut Criterion) {
    let caps = Caps::default();
    let gb2 = build_matrix_gamma(&boolean(), 2, &caps).unwrap().gamma;
    let z6 = zn(6).unwrap();
    let chain = GradeChain::ternary();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();

    let mut group = c.benchmark_group("fuzzy_ideals");
    group.sample_size(10);
    for (name, g) in [("GB_2", &gb2), ("Z6", &z6)] {
        group.bench_with_input(BenchmarkId::new("1-thread", name), g, |b, g| {
            single.install(|| b.iter(|| enumerate_fuzzy_ideals(g, &chain, IdealKind::TwoSided, caps.enumeration).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("default-pool", name), g, |b, g| {
            default.install(|| b.iter(|| enumerate_fuzzy_ideals(g, &chain, IdealKind::TwoSided, caps.enumeration).unwrap()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("matrix_build");
    group.sample_size(10);
    let z4 = zn(4).unwrap();
    group.bench_function("1-thread/Z4_2", |b| single.install(|| b.iter(|| build_matrix_gamma(&z4, 2, &caps).unwrap())));
    group.bench_function("default-pool/Z4_2", |b| default.install(|| b.iter(|| build_matrix_gamma(&z4, 2, &caps).unwrap())));
    group.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
