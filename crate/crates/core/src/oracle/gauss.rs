//! Exhaustive search over decoding orders and a grid of power splits.
//!
//! Each user's messages are labelled in the order its own receiver decodes
//! them, which loses no generality since powers are free. A receiver order
//! is then fixed by which foreign messages it decodes, in which order, and
//! where they fall between the own messages. Foreign messages after the
//! last own message are never listed because they act as noise anyway.

use super::{OracleConfig, OracleStats};
use crate::error::{domain, Error, Result};
use crate::gauss::{GaussianChannel, MessageId, SdScheme, User};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Largest message count per user the oracle accepts.
pub const MAX_MESSAGES: usize = 3;

/// Candidate decoding orders at both receivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEnumeration {
    pub l1: usize,
    pub l2: usize,
    pub rx1: Vec<Vec<MessageId>>,
    pub rx2: Vec<Vec<MessageId>>,
}

impl OrderEnumeration {
    pub fn new(l1: usize, l2: usize) -> Self {
        Self { l1, l2, rx1: receiver_orders(User::One, l1, l2), rx2: receiver_orders(User::Two, l2, l1) }
    }
}

/// All normalized orders at receiver `rx` with `own` own messages and
/// `foreign` messages from the other user.
pub fn receiver_orders(rx: User, own: usize, foreign: usize) -> Vec<Vec<MessageId>> {
    if own == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let head = own - 1;
    for k in 0..=foreign {
        for picked in (0..foreign).permutations(k) {
            for slots in (0..head + k).combinations(k) {
                let mut order = Vec::with_capacity(own + k);
                let (mut o, mut f) = (0, 0);
                for pos in 0..head + k {
                    if slots.contains(&pos) {
                        order.push(MessageId::new(rx.other(), picked[f]));
                        f += 1;
                    } else {
                        order.push(MessageId::new(rx, o));
                        o += 1;
                    }
                }
                order.push(MessageId::new(rx, head));
                out.push(order);
            }
        }
    }
    out
}

/// Power grid over tail sums. For a user with `L` messages decoded in
/// index order, `T(l) = p(l) + ... + p(L)` is the power still undecoded
/// below message `l`, and successive-decoding SINRs depend on the powers
/// only through these sums. `T(1)` is the budget; `T(2) >= ... >= T(L)`
/// range over zero and a `step_db` grid spanning `range_db` below the
/// budget, and `p(l) = T(l) - T(l+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerGrid {
    pub step_db: f64,
    pub range_db: f64,
}

impl Default for PowerGrid {
    fn default() -> Self {
        Self { step_db: 0.25, range_db: 60.0 }
    }
}

impl PowerGrid {
    fn check(&self) -> Result<()> {
        if !(self.step_db > 0.0 && self.range_db >= 0.0 && self.range_db.is_finite()) {
            return domain(format!("bad power grid: step {} dB, range {} dB", self.step_db, self.range_db));
        }
        Ok(())
    }

    /// Tail-sum levels in decreasing order: the budget, the dB grid below
    /// it, then zero.
    pub fn levels(&self, budget: f64) -> Vec<f64> {
        let n = (self.range_db / self.step_db + 1e-9).floor() as i64;
        let mut v: Vec<f64> = (0..=n).map(|k| budget * 10f64.powf(-(k as f64) * self.step_db / 10.0)).collect();
        v.push(0.0);
        v
    }

    /// Every power vector of `l` messages spending exactly `budget`.
    pub fn vectors(&self, l: usize, budget: f64) -> Vec<Vec<f64>> {
        let levels = self.levels(budget);
        let mut out = Vec::new();
        let mut tails = vec![budget];
        fill(&levels, l, 0, &mut tails, &mut out);
        out
    }
}

/// Extends `tails` with nonincreasing levels starting at `levels[from]`.
fn fill(levels: &[f64], l: usize, from: usize, tails: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
    if tails.len() == l {
        let mut p: Vec<f64> = tails.windows(2).map(|w| w[0] - w[1]).collect();
        p.push(*tails.last().expect("tails starts with the budget"));
        out.push(p);
        return;
    }
    for (i, &t) in levels.iter().enumerate().skip(from) {
        tails.push(t);
        fill(levels, l, i, tails, out);
        tails.pop();
    }
}

/// Best grid scheme found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussOracleResult {
    pub best_sum: f64,
    pub scheme: SdScheme,
    #[serde(skip)]
    pub stats: OracleStats,
}

/// Order in compact form: `(user index, message index)`.
type Compact = Vec<(usize, usize)>;

fn compact(order: &[MessageId]) -> Compact {
    order.iter().map(|m| (m.user.idx(), m.index)).collect()
}

/// Sum rate of one candidate; the same arithmetic as
/// [`sd_rates`](crate::gauss::sd_rates) without allocation or validation.
fn eval(
    gains: &[[f64; 2]; 2],
    noise: &[f64; 2],
    powers: [&[f64]; 2],
    orders: [&Compact; 2],
    decoded: &[[[bool; MAX_MESSAGES]; 2]; 2],
) -> f64 {
    let mut rate = [[f64::INFINITY; MAX_MESSAGES]; 2];
    for rx in 0..2 {
        let mut floor = noise[rx];
        for (u, p) in powers.iter().enumerate() {
            for (i, &x) in p.iter().enumerate() {
                if !decoded[rx][u][i] {
                    floor += x * gains[u][rx];
                }
            }
        }
        let mut later = 0.0;
        for &(u, i) in orders[rx].iter().rev() {
            let s = powers[u][i] * gains[u][rx];
            let b = (1.0 + s / (later + floor)).log2();
            if b < rate[u][i] {
                rate[u][i] = b;
            }
            later += s;
        }
    }
    let mut sum = 0.0;
    for (u, p) in powers.iter().enumerate() {
        for r in &rate[u][..p.len()] {
            sum += r;
        }
    }
    sum
}

/// Maximum successive-decoding sum rate over every order pair and every
/// grid power vector with `l1` and `l2` messages.
///
/// With `symmetric`, both users share one power vector and receiver 2 uses
/// the mirror image of receiver 1's order; this needs a symmetric channel
/// and `l1 == l2`.
///
/// Ties are broken towards the first candidate in enumeration order
/// (order pair, then user-1 powers, then user-2 powers), so the result does
/// not depend on the worker count.
pub fn gauss_exhaustive(
    ch: &GaussianChannel,
    l1: usize,
    l2: usize,
    grid: &PowerGrid,
    symmetric: bool,
    cfg: &OracleConfig,
) -> Result<GaussOracleResult> {
    if !(1..=MAX_MESSAGES).contains(&l1) || !(1..=MAX_MESSAGES).contains(&l2) {
        return domain(format!("message counts must lie in 1..={MAX_MESSAGES}, got ({l1}, {l2})"));
    }
    grid.check()?;
    if symmetric && (l1 != l2 || !ch.is_symmetric()) {
        return Err(Error::Unsupported("symmetric search needs a symmetric channel and equal message counts".into()));
    }
    let start = Instant::now();
    let orders = OrderEnumeration::new(l1, l2);
    let pairs: Vec<(Compact, Compact)> = if symmetric {
        orders
            .rx1
            .iter()
            .map(|o| {
                let mirror: Vec<MessageId> = o.iter().map(|m| MessageId::new(m.user.other(), m.index)).collect();
                (compact(o), compact(&mirror))
            })
            .collect()
    } else {
        orders.rx1.iter().cartesian_product(&orders.rx2).map(|(a, b)| (compact(a), compact(b))).collect()
    };
    let v1 = grid.vectors(l1, ch.p1());
    let v2 = if symmetric { Vec::new() } else { grid.vectors(l2, ch.p2()) };
    let per_pair = if symmetric { v1.len() as u128 } else { v1.len() as u128 * v2.len() as u128 };
    let needed = pairs.len() as u128 * per_pair;
    cfg.check(needed)?;

    let gains = [[ch.g11(), ch.g12()], [ch.g21(), ch.g22()]];
    let noise = [ch.n1(), ch.n2()];

    // (sum, pair index, user-1 vector index, user-2 vector index)
    type Best = (f64, usize, usize, usize);
    let better = |a: Best, b: Best| {
        if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2, b.3) < (a.1, a.2, a.3)) {
            b
        } else {
            a
        }
    };
    let none: Best = (f64::NEG_INFINITY, usize::MAX, usize::MAX, usize::MAX);
    let best = cfg.install(|| {
        (0..pairs.len() * v1.len())
            .into_par_iter()
            .fold(
                || none,
                |acc, job| {
                    let (pi, i) = (job / v1.len(), job % v1.len());
                    let (o1, o2) = &pairs[pi];
                    let mut decoded = [[[false; MAX_MESSAGES]; 2]; 2];
                    for (rx, o) in [o1, o2].into_iter().enumerate() {
                        for &(u, k) in o {
                            decoded[rx][u][k] = true;
                        }
                    }
                    let mut acc = acc;
                    let partners = if symmetric { std::slice::from_ref(&v1[i]) } else { &v2[..] };
                    for (j, p2) in partners.iter().enumerate() {
                        let s = eval(&gains, &noise, [&v1[i], p2], [o1, o2], &decoded);
                        acc = better(acc, (s, pi, i, j));
                    }
                    acc
                },
            )
            .reduce(|| none, better)
    });

    let (best_sum, pi, i, j) = best;
    let decompact = |o: &Compact| {
        o.iter().map(|&(u, k)| MessageId::new(if u == 0 { User::One } else { User::Two }, k)).collect::<Vec<_>>()
    };
    let scheme = SdScheme {
        powers_user1: v1[i].clone(),
        powers_user2: if symmetric { v1[i].clone() } else { v2[j].clone() },
        order_rx1: decompact(&pairs[pi].0),
        order_rx2: decompact(&pairs[pi].1),
    };
    let evaluated = u64::try_from(needed).unwrap_or(u64::MAX);
    Ok(GaussOracleResult {
        best_sum,
        scheme,
        stats: OracleStats { evaluated, feasible: evaluated, elapsed: start.elapsed() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{linear_to_db, sd_rates, single_message_sum, DecodeConfig};

    #[test]
    fn order_counts() {
        // One own message: only foreign prefixes before it.
        assert_eq!(receiver_orders(User::One, 1, 1).len(), 2);
        assert_eq!(receiver_orders(User::One, 1, 2).len(), 1 + 2 + 2);
        // Two and two: 1 + 2 * 2 + 2 * 3.
        assert_eq!(receiver_orders(User::One, 2, 2).len(), 11);
        assert_eq!(receiver_orders(User::One, 3, 3).len(), 1 + 9 + 36 + 60);
        for o in receiver_orders(User::Two, 3, 2) {
            assert_eq!(o.last().unwrap().user, User::Two);
            let own: Vec<usize> = o.iter().filter(|m| m.user == User::Two).map(|m| m.index).collect();
            assert_eq!(own, vec![0, 1, 2]);
        }
        let all = receiver_orders(User::One, 3, 3);
        assert_eq!(all.iter().unique().count(), all.len());
    }

    #[test]
    fn tail_grid_vectors() {
        let g = PowerGrid { step_db: 1.0, range_db: 10.0 };
        let l = g.levels(100.0);
        assert_eq!(l.len(), 12);
        assert_eq!((l[0], l[10], l[11]), (100.0, 10.0, 0.0));
        assert_eq!(g.vectors(1, 100.0), vec![vec![100.0]]);
        assert_eq!(g.vectors(2, 100.0).len(), 12);
        // Nonincreasing pairs from 12 levels.
        let v3 = g.vectors(3, 100.0);
        assert_eq!(v3.len(), 12 * 13 / 2);
        for v in &v3 {
            assert!(v.iter().all(|&x| x >= 0.0));
            assert!((v.iter().sum::<f64>() - 100.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let ch = GaussianChannel::from_snr_alpha(20.0, 0.7).unwrap();
        let cfg = OracleConfig::default();
        let g = PowerGrid::default();
        assert!(matches!(gauss_exhaustive(&ch, 0, 1, &g, false, &cfg), Err(Error::Domain(_))));
        assert!(matches!(gauss_exhaustive(&ch, 4, 1, &g, false, &cfg), Err(Error::Domain(_))));
        assert!(matches!(gauss_exhaustive(&ch, 2, 1, &g, true, &cfg), Err(Error::Unsupported(_))));
        let tight = OracleConfig { budget: 10, ..cfg };
        assert!(matches!(gauss_exhaustive(&ch, 2, 2, &g, false, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn single_message_at_full_power() {
        // With one message each, every user spends its budget, so the search
        // reduces to the four single-message decoding configurations.
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.7).unwrap();
        let r = gauss_exhaustive(&ch, 1, 1, &PowerGrid::default(), false, &OracleConfig::default()).unwrap();
        let want = DecodeConfig::ALL
            .iter()
            .map(|&c| single_message_sum(&ch, ch.p1(), ch.p2(), c))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((r.best_sum - want).abs() < 1e-12);
    }

    #[test]
    fn worked_example_two_messages() {
        let ch = GaussianChannel::symmetric(1.0, 0.17, 1.0, 1000.0).unwrap();
        let r = gauss_exhaustive(&ch, 2, 2, &PowerGrid::default(), true, &OracleConfig::default()).unwrap();
        assert!((r.best_sum - 10.2).abs() < 0.1, "{}", r.best_sum);
        let private = r.scheme.powers_user1[1];
        assert!((linear_to_db(private) - 14.5).abs() < 0.5, "{}", linear_to_db(private));
        let check = sd_rates(&ch, &r.scheme).unwrap();
        assert!((check.sum - r.best_sum).abs() < 1e-12);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let ch = GaussianChannel::new(1.0, 0.3, 0.5, 0.8, 1.0, 1.0, 300.0, 200.0).unwrap();
        let g = PowerGrid { step_db: 1.0, range_db: 30.0 };
        let a = gauss_exhaustive(&ch, 2, 1, &g, false, &OracleConfig { workers: 1, ..Default::default() }).unwrap();
        let b = gauss_exhaustive(&ch, 2, 1, &g, false, &OracleConfig { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(a.best_sum, b.best_sum);
        assert_eq!(a.scheme, b.scheme);
        assert!((sd_rates(&ch, &a.scheme).unwrap().sum - a.best_sum).abs() < 1e-12);
    }
}
