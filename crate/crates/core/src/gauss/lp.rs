//! Tiny dense linear programs solved by vertex enumeration.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

/// Maximizes `c . x` subject to `a_k . x <= b_k` for every row and `x >= 0`.
///
/// Every choice of `N` constraints (rows plus nonnegativity) is solved as
/// an equality system; feasible solutions are vertices, and the best one is
/// returned. Ties keep the first vertex in enumeration order. Returns `None`
/// when no vertex is feasible (empty or unbounded-without-vertex problems).
pub fn maximize<const N: usize>(c: [f64; N], rows: &[([f64; N], f64)]) -> Option<([f64; N], f64)> {
    let mut all: Vec<([f64; N], f64)> = rows.to_vec();
    for i in 0..N {
        let mut a = [0.0; N];
        a[i] = -1.0;
        all.push((a, 0.0));
    }
    let scale = all.iter().map(|(_, b)| b.abs()).fold(1.0, f64::max);
    let feasible = |x: &[f64; N]| {
        all.iter().all(|(a, b)| {
            let lhs: f64 = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum();
            lhs <= b + 1e-9 * scale
        })
    };
    let mut best: Option<([f64; N], f64)> = None;
    for subset in (0..all.len()).combinations(N) {
        let m = DMatrix::from_fn(N, N, |i, j| all[subset[i]].0[j]);
        let rhs = DVector::from_fn(N, |i, _| all[subset[i]].1);
        let Some(sol) = m.lu().solve(&rhs) else { continue };
        let mut x = [0.0; N];
        for (xi, si) in x.iter_mut().zip(sol.iter()) {
            *xi = *si;
        }
        if x.iter().any(|v: &f64| !v.is_finite()) || !feasible(&x) {
            continue;
        }
        let val: f64 = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
        if best.map_or(true, |(_, b)| val > b + 1e-12 * scale) {
            best = Some((x, val));
        }
    }
    best
}
