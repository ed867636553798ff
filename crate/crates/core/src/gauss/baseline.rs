//! Best successive-decoding sum rate with one message per user.

use super::{db_to_linear, GaussianChannel, User};
use rayon::prelude::*;
use serde::Serialize;

const GRID_FLOOR_DB: f64 = -40.0;
const GRID_STEP_DB: f64 = 0.1;

/// Which receivers decode the other user's message before their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecodeConfig {
    pub rx1_decodes_x2: bool,
    pub rx2_decodes_x1: bool,
}

impl DecodeConfig {
    pub const ALL: [DecodeConfig; 4] = [
        DecodeConfig { rx1_decodes_x2: false, rx2_decodes_x1: false },
        DecodeConfig { rx1_decodes_x2: true, rx2_decodes_x1: false },
        DecodeConfig { rx1_decodes_x2: false, rx2_decodes_x1: true },
        DecodeConfig { rx1_decodes_x2: true, rx2_decodes_x1: true },
    ];
}

/// Best single-message operating point found on the power grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineResult {
    pub sum: f64,
    pub p1: f64,
    pub p2: f64,
    pub config: DecodeConfig,
}

/// Candidate transmit powers: 0, then 0.1 dB steps from -40 dB up to the
/// budget, then the budget itself.
pub fn baseline_power_grid(budget: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let top_db = 10.0 * budget.log10();
    let mut k = 0u32;
    loop {
        let db = GRID_FLOOR_DB + k as f64 * GRID_STEP_DB;
        if db > top_db - 1e-9 {
            break;
        }
        grid.push(db_to_linear(db));
        k += 1;
    }
    grid.push(budget);
    grid
}

/// Sum rate of one message per user at powers `(p1, p2)` under `cfg`.
pub fn single_message_sum(ch: &GaussianChannel, p1: f64, p2: f64, cfg: DecodeConfig) -> f64 {
    let l = |x: f64| (1.0 + x).log2();
    let (g11, g12, g21, g22) = (ch.g11(), ch.g12(), ch.g21(), ch.g22());
    let (n1, n2) = (ch.n1(), ch.n2());
    let mut r1 = l(g11 * p1 / (n1 + if cfg.rx1_decodes_x2 { 0.0 } else { g21 * p2 }));
    let mut r2 = l(g22 * p2 / (n2 + if cfg.rx2_decodes_x1 { 0.0 } else { g12 * p1 }));
    if cfg.rx2_decodes_x1 {
        r1 = r1.min(l(g12 * p1 / (g22 * p2 + n2)));
    }
    if cfg.rx1_decodes_x2 {
        r2 = r2.min(l(g21 * p2 / (g11 * p1 + n1)));
    }
    r1 + r2
}

/// Maximum over the four decoding configurations and the power grid of
/// [`baseline_power_grid`] for each user.
pub fn single_message_baseline(ch: &GaussianChannel) -> BaselineResult {
    let g1 = baseline_power_grid(ch.budget(User::One));
    let g2 = baseline_power_grid(ch.budget(User::Two));
    let start = BaselineResult {
        sum: single_message_sum(ch, ch.p1(), ch.p2(), DecodeConfig::ALL[0]),
        p1: ch.p1(),
        p2: ch.p2(),
        config: DecodeConfig::ALL[0],
    };
    let better = |a: BaselineResult, b: BaselineResult| if b.sum > a.sum { b } else { a };
    g1.par_iter()
        .map(|&p1| {
            let mut best = start;
            for &p2 in &g2 {
                for cfg in DecodeConfig::ALL {
                    let sum = single_message_sum(ch, p1, p2, cfg);
                    if sum > best.sum {
                        best = BaselineResult { sum, p1, p2, config: cfg };
                    }
                }
            }
            best
        })
        .reduce(|| start, better)
}
