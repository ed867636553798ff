//! Upper bounds on the sum-capacity of Han-Kobayashi schemes with one common
//! and one private message per user, which also bound every successive
//! decoding scheme.
//!
//! Both bounds are maximized over the private powers `(q1, q2)` in the box
//! `[0, p1] x [0, p2]`; the common message of user `i` gets `p_i - q_i`.
//! The first takes the smaller of two sum-rate constraints, the second is a
//! single separable constraint.

use crate::gauss::GaussianChannel;
use serde::Serialize;

/// Both bounds, their maximizers and the combined bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub opt1: f64,
    pub opt2: f64,
    /// Private powers `(q1, q2)` maximizing the first bound.
    pub q_star_1: (f64, f64),
    /// Private powers `(q1, q2)` maximizing the second bound.
    pub q_star_2: (f64, f64),
    /// `min(opt1, opt2)`.
    pub combined: f64,
}

fn lg(x: f64) -> f64 {
    x.log2()
}

/// The two terms of the first bound at private powers `(q1, q2)`.
fn ub1_terms(ch: &GaussianChannel, q1: f64, q2: f64) -> (f64, f64) {
    let (g11, g12, g21, g22) = (ch.g11(), ch.g12(), ch.g21(), ch.g22());
    let (n1, n2, p1, p2) = (ch.n1(), ch.n2(), ch.p1(), ch.p2());
    let a = lg(1.0 + (g11 * p1 + g21 * (p2 - q2)) / (g21 * q2 + n1)) + lg(1.0 + g22 * q2 / (g12 * q1 + n2));
    let b = lg(1.0 + (g22 * p2 + g12 * (p1 - q1)) / (g12 * q1 + n2)) + lg(1.0 + g11 * q1 / (g21 * q2 + n1));
    (a, b)
}

/// Objective of the first bound at private powers `(q1, q2)`, in bits.
pub fn ub1_objective(ch: &GaussianChannel, q1: f64, q2: f64) -> f64 {
    let (a, b) = ub1_terms(ch, q1, q2);
    a.min(b)
}

/// Objective of the second bound at private powers `(q1, q2)`, in bits.
pub fn ub2_objective(ch: &GaussianChannel, q1: f64, q2: f64) -> f64 {
    ub2_part(ch, q1) + ub2_part(&ch.swapped(), q2)
}

/// The part of the second bound that depends on user 1's private power.
fn ub2_part(ch: &GaussianChannel, q1: f64) -> f64 {
    lg(1.0 + (ch.g11() * q1 + ch.g21() * ch.p2()) / ch.n1()) - lg(1.0 + ch.g12() * q1 / ch.n2())
}

/// Real roots of `a x^2 + b x + c = 0`, including the linear case.
fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-15 * scale {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    // Numerically stable pair.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(c / q);
    }
    roots
}

/// Best point of the first bound inside the halfspace where the first term
/// is the smaller one, on a channel with unit direct gains.
///
/// The first term decreases in `q1`, so for each `q2` the smallest `q1`
/// allowed by the halfspace and the box is optimal. Along that curve the
/// objective is monotone where `q1 = 0` and has the three-log form where
/// `q1` follows the halfspace boundary; candidates are the piece endpoints
/// and the stationary points of the three-log form.
fn ub1_halfspace(ch: &GaussianChannel) -> Option<(f64, f64, f64)> {
    let (g12, g21) = (ch.g12(), ch.g21());
    let (n1, n2, p1, p2) = (ch.n1(), ch.n2(), ch.p1(), ch.p2());
    let c1 = n1 + p1 + g21 * p2;
    let c2 = n2 + p2 + g12 * p1;
    // Halfspace: a * q1 <= b(q2) with b(q2) = bs * q2 + b0.
    let a = c1 * g12 - c2;
    let bs = c2 * g21 - c1;
    let b0 = c2 * n1 - c1 * n2;
    let slack = 1e-12 * (c1.max(c2)) * (1.0 + p1 + p2);
    let in_h = |q1: f64, q2: f64| a * q1 <= bs * q2 + b0 + slack;

    let mut cands = vec![0.0, p2];
    // Smallest admissible q1 for a given q2.
    let lowest_q1: Box<dyn Fn(f64) -> f64> = if a >= 0.0 {
        // The halfspace caps q1 from above; q1 = 0 is best when admissible.
        if bs != 0.0 {
            cands.push(-b0 / bs);
        }
        Box::new(|_| 0.0)
    } else {
        // q1 >= m * q2 + k.
        let m = bs / a;
        let k = b0 / a;
        if m != 0.0 {
            cands.push(-k / m);
            cands.push((p1 - k) / m);
        }
        // Three-log form: -log(a1 q + b1) - log(a2 q + b2) + log(a3 q + b3).
        let (a1, b1) = (g21, n1);
        let (a2, b2) = (g12 * m, g12 * k + n2);
        let (a3, b3) = (g12 * m + 1.0, g12 * k + n2);
        let qa = -a1 * a2 * a3;
        let qb = -2.0 * a1 * a2 * b3;
        let qc = a3 * b1 * b2 - a1 * b2 * b3 - a2 * b1 * b3;
        cands.extend(real_roots(qa, qb, qc));
        Box::new(move |q2| (m * q2 + k).max(0.0))
    };

    let mut best: Option<(f64, f64, f64)> = None;
    for q2 in cands {
        if !q2.is_finite() {
            continue;
        }
        let q2 = q2.clamp(0.0, p2);
        let q1 = lowest_q1(q2);
        if q1 > p1 * (1.0 + 1e-12) || !in_h(q1, q2) {
            continue;
        }
        let q1 = q1.min(p1);
        let v = ub1_objective(ch, q1, q2);
        if v.is_finite() && best.map_or(true, |(b, _, _)| v > b) {
            best = Some((v, q1, q2));
        }
    }
    best
}

/// First bound: the larger of the two halfspace maxima. The second
/// halfspace is the first one of the channel with users swapped.
pub fn upper_bound_1(ch: &GaussianChannel) -> (f64, (f64, f64)) {
    let unit = ch.unit_direct();
    let h = ub1_halfspace(&unit);
    let hc = ub1_halfspace(&unit.swapped()).map(|(v, a, b)| (v, b, a));
    let (_, q1, q2) = match (h, hc) {
        (Some(x), Some(y)) => {
            if y.0 > x.0 {
                y
            } else {
                x
            }
        }
        (Some(x), None) | (None, Some(x)) => x,
        // The two halfspaces cover the box, so at least one side has a
        // candidate; fall back to the full-private corner regardless.
        (None, None) => (0.0, ch.p1(), ch.p2()),
    };
    (ub1_objective(ch, q1, q2), (q1, q2))
}

/// Maximizer of one separable part of the second bound. Its derivative has
/// the constant sign of `N2 - g12 (g21 p2 + N1)` (unit direct gains), so
/// the part is monotone and one endpoint is optimal.
fn ub2_argmax(ch: &GaussianChannel) -> f64 {
    let (lo, hi) = (ub2_part(ch, 0.0), ub2_part(ch, ch.p1()));
    if hi >= lo {
        ch.p1()
    } else {
        0.0
    }
}

/// Second bound, maximized separately in `q1` and `q2`.
pub fn upper_bound_2(ch: &GaussianChannel) -> (f64, (f64, f64)) {
    let q1 = ub2_argmax(ch);
    let q2 = ub2_argmax(&ch.swapped());
    (ub2_objective(ch, q1, q2), (q1, q2))
}

/// Both bounds and their minimum.
pub fn combined_bound(ch: &GaussianChannel) -> BoundResult {
    let (opt1, q_star_1) = upper_bound_1(ch);
    let (opt2, q_star_2) = upper_bound_2(ch);
    BoundResult { opt1, opt2, q_star_1, q_star_2, combined: opt1.min(opt2) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{db_to_linear, hk_region_sum, HkPowerSplit};
    use proptest::prelude::*;

    /// Dense 2-D search on a dB grid plus zero, refined around the best cell.
    fn grid_max(f: impl Fn(f64, f64) -> f64, p1: f64, p2: f64, step_db: f64) -> f64 {
        let axis = |p: f64| {
            let mut v = vec![0.0];
            let n = (60.0 / step_db) as i32;
            for i in (0..=n).rev() {
                v.push(p * db_to_linear(-(i as f64) * step_db));
            }
            v
        };
        let (a1, a2) = (axis(p1), axis(p2));
        let mut best = f64::NEG_INFINITY;
        for &x in &a1 {
            for &y in &a2 {
                best = best.max(f(x, y));
            }
        }
        best
    }

    #[test]
    fn interference_free() {
        let ch = GaussianChannel::new(1.0, 0.0, 0.0, 2.0, 1.0, 0.5, 100.0, 50.0).unwrap();
        let free = (1.0f64 + 100.0).log2() + (1.0f64 + 200.0).log2();
        let r = combined_bound(&ch);
        assert!((r.opt1 - free).abs() < 1e-12, "{}", r.opt1);
        assert!((r.opt2 - free).abs() < 1e-12);
        assert!((r.combined - free).abs() < 1e-12);
        assert_eq!(r.q_star_1, (100.0, 50.0));
    }

    #[test]
    fn matches_grid_at_three_quarters() {
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.75).unwrap();
        let (v, (q1, q2)) = upper_bound_1(&ch);
        let g = grid_max(|a, b| ub1_objective(&ch, a, b), ch.p1(), ch.p2(), 0.01);
        assert!(v >= g - 1e-9 && v - g < 1e-4, "{v} vs {g}");
        assert!((ub1_objective(&ch, q1, q2) - v).abs() < 1e-12);
    }

    #[test]
    fn second_bound_matches_grid() {
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.6).unwrap();
        let (v, _) = upper_bound_2(&ch);
        let g = grid_max(|a, b| ub2_objective(&ch, a, b), ch.p1(), ch.p2(), 0.01);
        assert!(v >= g - 1e-12 && v - g < 1e-6, "{v} vs {g}");
    }

    #[test]
    fn crossover_near_0608() {
        let diff = |a: f64| {
            let r = combined_bound(&GaussianChannel::from_snr_alpha(30.0, a).unwrap());
            r.opt1 - r.opt2
        };
        assert!(diff(0.55) > 0.0 && diff(0.7) < 0.0);
        let (mut lo, mut hi) = (0.55, 0.7);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if diff(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 0.608).abs() < 0.01, "{lo}");
    }

    #[test]
    fn worked_example_channel_above_hk_witness() {
        let ch = GaussianChannel::symmetric(1.0, 0.17, 1.0, 1000.0).unwrap();
        assert!(combined_bound(&ch).combined >= 11.2);
    }

    #[test]
    fn second_bound_with_common_power_grows_with_cross_gain() {
        // Symmetric at 30 dB and alpha >= 0.6: both maximizers are q = 0 and
        // the bound is 2 log(1 + INR).
        for alpha in [0.6, 0.75, 0.9] {
            let ch = GaussianChannel::from_snr_alpha(30.0, alpha).unwrap();
            let (v, q) = upper_bound_2(&ch);
            assert_eq!(q, (0.0, 0.0));
            assert!((v - 2.0 * (1.0 + ch.inr(crate::gauss::User::One)).log2()).abs() < 1e-9);
        }
    }

    #[test]
    fn roots() {
        let mut r = real_roots(1.0, -3.0, 2.0);
        r.sort_by(f64::total_cmp);
        assert_eq!(r, vec![1.0, 2.0]);
        assert_eq!(real_roots(0.0, 2.0, -4.0), vec![2.0]);
        assert!(real_roots(1.0, 0.0, 1.0).is_empty());
        assert!(real_roots(0.0, 0.0, 0.0).is_empty());
    }

    fn channel() -> impl Strategy<Value = GaussianChannel> {
        (0.2f64..3.0, 0.0f64..2.0, 0.0f64..2.0, 0.2f64..3.0, 0.2f64..2.0, 0.2f64..2.0, 1.0f64..3.5, 1.0f64..3.5)
            .prop_map(|(g11, g12, g21, g22, n1, n2, e1, e2)| {
                GaussianChannel::new(g11, g12, g21, g22, n1, n2, 10f64.powf(e1), 10f64.powf(e2)).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hk_splits_below_both_bounds(ch in channel(), f1 in 0.0f64..=1.0, f2 in 0.0f64..=1.0) {
            let split = HkPowerSplit::new((1.0 - f1) * ch.p1(), f1 * ch.p1(), (1.0 - f2) * ch.p2(), f2 * ch.p2()).unwrap();
            let hk = hk_region_sum(&ch, &split).unwrap();
            let r = combined_bound(&ch);
            prop_assert!(hk <= r.opt1 + 1e-9, "{hk} > {}", r.opt1);
            prop_assert!(hk <= r.opt2 + 1e-9, "{hk} > {}", r.opt2);
        }

        #[test]
        fn swap_invariance(ch in channel()) {
            let a = combined_bound(&ch);
            let b = combined_bound(&ch.swapped());
            prop_assert!((a.opt1 - b.opt1).abs() < 1e-9);
            prop_assert!((a.opt2 - b.opt2).abs() < 1e-9);
        }

        #[test]
        fn argmax_consistent(ch in channel()) {
            let r = combined_bound(&ch);
            for (q1, q2) in [r.q_star_1, r.q_star_2] {
                prop_assert!((0.0..=ch.p1()).contains(&q1) && (0.0..=ch.p2()).contains(&q2));
            }
            prop_assert!((ub1_objective(&ch, r.q_star_1.0, r.q_star_1.1) - r.opt1).abs() < 1e-12);
            prop_assert!((ub2_objective(&ch, r.q_star_2.0, r.q_star_2.1) - r.opt2).abs() < 1e-12);
            prop_assert!(r.combined <= r.opt1 && r.combined <= r.opt2);
        }

        #[test]
        fn first_bound_beats_coarse_grid(ch in channel()) {
            let (v, _) = upper_bound_1(&ch);
            let g = grid_max(|a, b| ub1_objective(&ch, a, b), ch.p1(), ch.p2(), 0.5);
            prop_assert!(v >= g - 1e-9, "{v} < grid {g}");
        }

        #[test]
        fn second_bound_nonincreasing_in_weak_cross_gain(ch in channel(), bump in 0.0f64..1.0) {
            // Only while all power stays private; otherwise the common term
            // grows with the cross gain.
            let more = GaussianChannel::new(ch.g11(), ch.g12() + bump, ch.g21(), ch.g22(), ch.n1(), ch.n2(), ch.p1(), ch.p2()).unwrap();
            let (hi, q_hi) = upper_bound_2(&more);
            let (lo, q_lo) = upper_bound_2(&ch);
            let full = (ch.p1(), ch.p2());
            if q_hi == full && q_lo == full {
                prop_assert!(hi <= lo + 1e-9);
            }
        }
    }
}
