//! Shared helpers for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use sdcap_core::gauss::{db_to_linear, GaussianChannel};

/// Coarse grid step and span for the bound grid search, in dB.
const COARSE_DB: f64 = 0.1;
const SPAN_DB: f64 = 80.0;
/// Zoom stages: (step, half-width) in dB.
const ZOOM: [(f64, f64); 3] = [(0.005, 0.15), (0.0005, 0.01), (0.00005, 0.001)];
/// Coarse cells refined independently.
const SEEDS: usize = 8;

/// Axis of `{0} and p * 10^(-k * step / 10)`, as (dB offset, value) pairs;
/// zero is marked with an infinite offset.
fn axis(p: f64) -> Vec<(f64, f64)> {
    let n = (SPAN_DB / COARSE_DB).round() as i64;
    let mut v: Vec<(f64, f64)> =
        (0..=n).map(|k| (-(k as f64) * COARSE_DB, p * db_to_linear(-(k as f64) * COARSE_DB))).collect();
    v.push((f64::NEG_INFINITY, 0.0));
    v
}

fn zoom_axis(p: f64, at_db: f64, step: f64, half: f64) -> Vec<(f64, f64)> {
    if at_db == f64::NEG_INFINITY {
        return vec![(at_db, 0.0)];
    }
    let n = (half / step).round() as i64;
    (-n..=n).map(|k| at_db + k as f64 * step).filter(|&d| d <= 0.0).map(|d| (d, p * db_to_linear(d))).collect()
}

/// Grid maximum of `f` over `[0, p1] x [0, p2]`: a 0.1 dB grid over 80 dB
/// plus zero, then three zoom stages around the best coarse cells.
pub fn grid_max_2d(f: impl Fn(f64, f64) -> f64, p1: f64, p2: f64) -> f64 {
    let (a1, a2) = (axis(p1), axis(p2));
    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(a1.len() * a2.len());
    for &(d1, x) in &a1 {
        for &(d2, y) in &a2 {
            cells.push((f(x, y), d1, d2));
        }
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = cells[0].0;
    for &(_, d1, d2) in cells.iter().take(SEEDS) {
        let mut at = (d1, d2);
        for (step, half) in ZOOM {
            let (z1, z2) = (zoom_axis(p1, at.0, step, half), zoom_axis(p2, at.1, step, half));
            let mut local = (f64::NEG_INFINITY, at);
            for &(e1, x) in &z1 {
                for &(e2, y) in &z2 {
                    let v = f(x, y);
                    if v > local.0 {
                        local = (v, (e1, e2));
                    }
                }
            }
            at = local.1;
            best = best.max(local.0);
        }
    }
    best
}

/// Grid maximum of a one-variable function over `[0, p]` on a 0.001 dB
/// grid spanning 80 dB, plus zero.
pub fn grid_max_1d(f: impl Fn(f64) -> f64, p: f64) -> f64 {
    let n = (SPAN_DB / 0.001).round() as i64;
    (0..=n).map(|k| f(p * db_to_linear(-(k as f64) * 0.001))).fold(f(0.0), f64::max)
}

/// A random channel: asymmetric gains, noises and budgets, cross gains
/// from zero up to twice the direct gain.
pub fn random_channel(rng: &mut impl Rng) -> GaussianChannel {
    let g11 = rng.gen_range(0.5..2.0);
    let g22 = rng.gen_range(0.5..2.0);
    GaussianChannel::new(
        g11,
        rng.gen_range(0.0..2.0) * g11,
        rng.gen_range(0.0..2.0) * g22,
        g22,
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
        10f64.powf(rng.gen_range(1.0..4.0)),
        10f64.powf(rng.gen_range(1.0..4.0)),
    )
    .unwrap()
}
