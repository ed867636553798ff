use super::{OracleConfig, OracleStats};
use crate::det::LevelScheme;
use crate::error::{domain, Result};
use crate::level::{rational, Rational};
use rayon::prelude::*;
use std::time::Instant;

const MAX_LEVELS: u32 = 30;
const MAX_WITNESSES: usize = 8;

/// Integer bit-level gains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntLevelParams {
    pub n11: u32,
    pub n22: u32,
    pub n12: u32,
    pub n21: u32,
}

impl IntLevelParams {
    pub fn new(n11: u32, n22: u32, n12: u32, n21: u32) -> Self {
        Self { n11, n22, n12, n21 }
    }

    pub fn symmetric(n: u32, cross: u32) -> Self {
        Self::new(n, n, cross, cross)
    }

    pub fn delta1(&self) -> i64 {
        self.n11 as i64 - self.n21 as i64
    }

    pub fn delta2(&self) -> i64 {
        self.n22 as i64 - self.n12 as i64
    }

    fn swapped(&self) -> Self {
        Self::new(self.n22, self.n11, self.n21, self.n12)
    }
}

/// One integer level assignment.
///
/// Bit `b` of `user1` is the level `[b, b + 1]`; bit `j` of `user2` is the
/// level `[n11 - n22 + j, n11 - n22 + j + 1]`, so both users' top level sits
/// just under the noise floor `n11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntLevelInstance {
    pub params: IntLevelParams,
    pub user1: u64,
    pub user2: u64,
}

impl IntLevelInstance {
    pub fn rate1(&self) -> u32 {
        self.user1.count_ones()
    }

    pub fn rate2(&self) -> u32 {
        self.user2.count_ones()
    }

    pub fn messages(&self) -> (u32, u32) {
        (runs(self.user1), runs(self.user2))
    }

    /// Whether both integer complementarity conditions hold.
    pub fn is_feasible(&self) -> bool {
        let p = &self.params;
        let base = p.n11 as i64 - p.n22 as i64;
        for x in bits(self.user1) {
            for y in bits(self.user2) {
                let y = y as i64 + base;
                let x = x as i64;
                if y == x + p.delta1() || x == y + p.delta2() {
                    return false;
                }
            }
        }
        true
    }

    /// The assignment as a level scheme in the channel's own units.
    pub fn to_level_scheme(&self) -> Result<LevelScheme<Rational>> {
        let base = self.params.n11 as i64 - self.params.n22 as i64;
        let unit = |mask: u64, offset: i64| {
            bits(mask).map(|b| (rational(b as i64 + offset, 1), rational(b as i64 + offset + 1, 1))).collect::<Vec<_>>()
        };
        LevelScheme::from_pairs(&unit(self.user1, 0), &unit(self.user2, base))
    }
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |b| mask >> b & 1 == 1)
}

/// Number of maximal runs of set bits.
pub fn runs(mask: u64) -> u32 {
    (mask & !(mask << 1)).count_ones()
}

/// Moves bit `x` to `x + s`, dropping bits that leave `0..64`.
fn shift(mask: u64, s: i64) -> u64 {
    match s {
        s if s >= 64 || s <= -64 => 0,
        s if s >= 0 => mask << s,
        s => mask >> -s,
    }
}

/// Outcome of an integer-level enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct DetOracleResult {
    /// Best `R1 + R2`, or `None` when the filter rejected everything.
    pub max_sum: Option<u32>,
    /// Up to eight maximizing assignments in enumeration order.
    pub witnesses: Vec<IntLevelInstance>,
    pub stats: OracleStats,
}

#[derive(Clone)]
struct Acc {
    best: Option<u32>,
    witnesses: Vec<(u64, u64)>,
    evaluated: u64,
    feasible: u64,
}

impl Acc {
    fn empty() -> Self {
        Self { best: None, witnesses: Vec::new(), evaluated: 0, feasible: 0 }
    }

    fn offer(&mut self, sum: u32, u1: u64, u2: u64) {
        match self.best {
            Some(b) if sum < b => {}
            Some(b) if sum == b => {
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push((u1, u2));
                }
            }
            _ => {
                self.best = Some(sum);
                self.witnesses.clear();
                self.witnesses.push((u1, u2));
            }
        }
    }

    /// Order-preserving merge: `self` precedes `other` in enumeration order.
    fn merge(mut self, other: Self) -> Self {
        self.evaluated += other.evaluated;
        self.feasible += other.feasible;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b > a => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b == a => {
                let room = MAX_WITNESSES - self.witnesses.len();
                self.witnesses.extend(other.witnesses.into_iter().take(room));
            }
            _ => {}
        }
        self
    }
}

/// Exhaustive search with message caps and an extra predicate on
/// `(user1, user2)` masks (in the [`IntLevelInstance`] convention).
pub fn det_exhaustive_filtered<F>(
    params: IntLevelParams,
    caps: (Option<u32>, Option<u32>),
    filter: F,
    cfg: &OracleConfig,
) -> Result<DetOracleResult>
where
    F: Fn(u64, u64) -> bool + Sync,
{
    let start = Instant::now();
    if params.n11 == 0 || params.n11 > MAX_LEVELS || params.n22 > MAX_LEVELS {
        return domain(format!("direct gains must lie in 1..={MAX_LEVELS}, got {params:?}"));
    }
    cfg.check(1u128 << (params.n11 + params.n22))?;

    // Enumerate with the stronger user first; masks are swapped back before
    // they reach the filter or the caller.
    let swap = params.n11 < params.n22;
    let p = if swap { params.swapped() } else { params };
    let (cap1, cap2) = if swap { (caps.1, caps.0) } else { caps };
    let (w1, w2) = (p.n11, p.n22);
    let base = w1 - w2;
    let (d1, d2) = (p.delta1(), p.delta2());
    let cap_ok = |mask: u64, cap: Option<u32>| cap.map_or(true, |c| runs(mask) <= c);
    let orig = |a: u64, b: u64| if swap { (b, a) } else { (a, b) };

    let acc = cfg.install(|| {
        (0..1u64 << w1)
            .into_par_iter()
            .fold(Acc::empty, |mut acc, u1| {
                acc.evaluated += 1 << w2;
                if !cap_ok(u1, cap1) {
                    return acc;
                }
                let r1 = u1.count_ones();
                let hit1 = shift(u1, d1);
                for u2 in 0..1u64 << w2 {
                    let v = u2 << base;
                    if hit1 & v != 0 || shift(v, d2) & u1 != 0 || !cap_ok(u2, cap2) {
                        continue;
                    }
                    let (a, b) = orig(u1, u2);
                    if !filter(a, b) {
                        continue;
                    }
                    acc.feasible += 1;
                    acc.offer(r1 + u2.count_ones(), a, b);
                }
                acc
            })
            .reduce(Acc::empty, Acc::merge)
    });

    Ok(DetOracleResult {
        max_sum: acc.best,
        witnesses: acc.witnesses.into_iter().map(|(user1, user2)| IntLevelInstance { params, user1, user2 }).collect(),
        stats: OracleStats { evaluated: acc.evaluated, feasible: acc.feasible, elapsed: start.elapsed() },
    })
}

/// Maximum `R1 + R2` over all feasible integer level assignments.
pub fn det_exhaustive(params: IntLevelParams, cfg: &OracleConfig) -> Result<DetOracleResult> {
    det_exhaustive_filtered(params, (None, None), |_, _| true, cfg)
}

/// Maximum `R1 + R2` when user `i` may use at most `caps.i` maximal runs
/// of active levels (`None` = uncapped).
pub fn det_exhaustive_capped(
    params: IntLevelParams,
    l1_max: Option<u32>,
    l2_max: Option<u32>,
    cfg: &OracleConfig,
) -> Result<u32> {
    let r = det_exhaustive_filtered(params, (l1_max, l2_max), |_, _| true, cfg)?;
    Ok(r.max_sum.unwrap_or(0))
}
