//! Brute-force reference solvers.
//!
//! These share no code with the closed-form routines they check: the
//! deterministic oracle enumerates every integer level assignment, and the
//! Gaussian oracle enumerates decoding orders and a grid of power splits.

mod det;
mod gauss;

pub use det::{
    det_exhaustive, det_exhaustive_capped, det_exhaustive_filtered, runs, DetOracleResult, IntLevelInstance,
    IntLevelParams,
};
pub use gauss::{gauss_exhaustive, receiver_orders, GaussOracleResult, OrderEnumeration, PowerGrid};

use crate::error::{Error, Result};
use std::time::Duration;

/// Execution limits shared by the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
    /// Maximum number of candidate evaluations.
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { workers: 0, budget: 1 << 30 }
    }
}

impl OracleConfig {
    pub(crate) fn check(&self, needed: u128) -> Result<()> {
        if needed > self.budget {
            Err(Error::BudgetExceeded { needed, limit: self.budget })
        } else {
            Ok(())
        }
    }

    /// Runs `f` on a pool with the configured number of workers.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Counters reported by an oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleStats {
    /// Candidates examined.
    pub evaluated: u64,
    /// Candidates satisfying all constraints.
    pub feasible: u64,
    pub elapsed: Duration,
}
