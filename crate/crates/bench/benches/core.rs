//! Timing of the closed forms, translations, bounds and oracles.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sdcap_core::bounds::combined_bound;
use sdcap_core::det::{optimal_symmetric_scheme, symmetric_capacity};
use sdcap_core::det_asym::optimal_asym_scheme;
use sdcap_core::gauss::{hk_region_sum, single_message_baseline, GaussianChannel, HkPowerSplit};
use sdcap_core::level::rational;
use sdcap_core::oracle::{det_exhaustive, gauss_exhaustive, IntLevelParams, OracleConfig, PowerGrid};
use sdcap_core::translate::{translate_equalizing, translate_simple};
use sdcap_core::DeterministicChannel;

fn deterministic(c: &mut Criterion) {
    c.bench_function("symmetric_capacity_rational", |b| {
        b.iter(|| symmetric_capacity(black_box(rational(37, 50))).unwrap())
    });
    c.bench_function("optimal_symmetric_scheme_rational", |b| {
        b.iter(|| optimal_symmetric_scheme(black_box(rational(97, 100))).unwrap())
    });
    let ch = DeterministicChannel::new(rational(1, 1), rational(9, 10), rational(7, 10), rational(6, 10)).unwrap();
    c.bench_function("optimal_asym_scheme", |b| b.iter(|| optimal_asym_scheme(black_box(&ch)).unwrap()));
}

fn gaussian(c: &mut Criterion) {
    let ch = GaussianChannel::from_snr_alpha(30.0, 0.75).unwrap();
    c.bench_function("translate_simple_30db", |b| b.iter(|| translate_simple(black_box(&ch)).unwrap()));
    c.bench_function("translate_equalizing_30db", |b| b.iter(|| translate_equalizing(black_box(&ch)).unwrap()));
    c.bench_function("combined_bound_30db", |b| b.iter(|| combined_bound(black_box(&ch))));
    let split = HkPowerSplit::symmetric(&ch, 4.0).unwrap();
    c.bench_function("hk_region_sum", |b| b.iter(|| hk_region_sum(black_box(&ch), &split).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("single_message_baseline_30db", |b| b.iter(|| single_message_baseline(black_box(&ch))));
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("det_exhaustive_10_10_7_7", |b| {
        b.iter(|| det_exhaustive(black_box(IntLevelParams::symmetric(10, 7)), &cfg).unwrap())
    });
    let ch = GaussianChannel::from_snr_alpha(30.0, 0.75).unwrap();
    let grid = PowerGrid { step_db: 1.0, range_db: 40.0 };
    g.bench_function("gauss_exhaustive_2x2_1db", |b| {
        b.iter(|| gauss_exhaustive(black_box(&ch), 2, 2, &grid, false, &cfg).unwrap())
    });
    g.finish();
}

criterion_group!(benches, deterministic, gaussian, oracles);
criterion_main!(benches);
