use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use feqlab_bench::cyclic_with_negation;
use feqlab_core::engine::residual_vanvleck;
use feqlab_core::solvers::{newton_oracle, solve_vanvleck, OracleConfig};
use feqlab_core::{enumerate_characters, DiracMeasure, EquationTag, ToleranceConfig};

fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_characters");
    for n in [4, 6, 8] {
        let (s, _) = cyclic_with_negation(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| enumerate_characters(black_box(s)))
        });
    }
    group.finish();
}

fn residuals(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("vanvleck");
    for n in [4, 8] {
        let (s, sigma) = cyclic_with_negation(n);
        let mu = DiracMeasure::dirac(n / 4);
        let f = solve_vanvleck(&s, &sigma, &mu, &tol).unwrap().solutions[0].f.clone();
        group.bench_with_input(BenchmarkId::new("residual", n), &n, |b, _| {
            b.iter(|| residual_vanvleck(&s, black_box(&f), &sigma, &mu).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve", n), &n, |b, _| {
            b.iter(|| solve_vanvleck(&s, &sigma, black_box(&mu), &tol).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let (s, sigma) = cyclic_with_negation(4);
    let mu = DiracMeasure::dirac(1);
    let config = OracleConfig { starts: 32, ..OracleConfig::default() };
    c.bench_function("oracle_c4_32_starts", |b| {
        b.iter(|| newton_oracle(&s, Some(&sigma), Some(&mu), EquationTag::Vanvleck, &config, &tol).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = characters, residuals, oracle
}
criterion_main!(benches);
