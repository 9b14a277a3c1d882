use capot_bench::uniform_problem;
use capot_core::nondegeneracy::DEFAULT_SCAN_BUDGET;
use capot_core::{
    cycle_scan, find_improving_cycle, fit_separable, solve, verify_fractal_claims, BuiltinCost,
    FitOptions, FractalSpec, SupportSet,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_fit(c: &mut Criterion) {
    let p = uniform_problem(BuiltinCost::NegProduct, 48, 2);
    let support = SupportSet::full(48, 48).unwrap();
    c.bench_function("fit_separable/48", |b| {
        b.iter(|| fit_separable(black_box(&support), p.cost(), FitOptions::default()).unwrap())
    });
    c.bench_function("fit_separable_minimal/48", |b| {
        b.iter(|| {
            fit_separable(
                &support,
                p.cost(),
                FitOptions {
                    minimal_witness: true,
                },
            )
            .unwrap()
        })
    });
}

fn bench_cycles(c: &mut Criterion) {
    let p = uniform_problem(BuiltinCost::SqDistance, 6, 2);
    let support = SupportSet::full(6, 6).unwrap();
    c.bench_function("cycle_scan/6x6/n<=3", |b| {
        b.iter(|| cycle_scan(&support, p.cost(), 3, DEFAULT_SCAN_BUDGET).unwrap())
    });
    let q = uniform_problem(BuiltinCost::SqDistance, 16, 3);
    let plan = solve(&q).into_optimal().unwrap().plan;
    c.bench_function("find_improving_cycle/16", |b| {
        b.iter(|| find_improving_cycle(black_box(&plan), &q, None).unwrap())
    });
}

fn bench_fractal(c: &mut Criterion) {
    let spec = FractalSpec::new(3, 2).unwrap();
    c.bench_function("verify_fractal_claims/N3K2", |b| {
        b.iter(|| verify_fractal_claims(black_box(&spec), DEFAULT_SCAN_BUDGET).unwrap())
    });
}

criterion_group!(benches, bench_fit, bench_cycles, bench_fractal);
criterion_main!(benches);
