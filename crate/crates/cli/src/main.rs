//! `sdcap`: sum-capacity of two-user interference channels under
//! superposition coding and successive decoding.
//!
//! Exit codes: 0 on success, 2 for usage or domain errors, 3 when an
//! oracle would exceed `--budget`, 1 for I/O failures.

// `!(x > 0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod output;
mod parse;

use clap::{Args, Parser, Subcommand};
use output::{Format, Sink};
use parse::ChannelArgs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "sdcap", version, about = "Sum-capacity of two-user interference channels under successive decoding")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalArgs {
    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format. Sweeps default to csv, single results to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sweeps and oracles (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Maximum candidate evaluations an oracle may perform.
    #[arg(long, global = true, default_value_t = 1 << 30)]
    budget: u128,
    /// Significant digits of numeric output.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

/// A range `lo..=hi` with a step.
#[derive(Debug, Clone, Copy, Args)]
struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

/// Deterministic channel: a symmetric `--alpha` or four level gains.
#[derive(Debug, Clone, Args)]
struct DetArgs {
    /// Symmetric cross/direct ratio, as a decimal or fraction (`0.7`, `2/3`).
    #[arg(long, value_parser = parse::parse_rational)]
    alpha: Option<sdcap_core::Rational>,
    #[arg(long, value_parser = parse::parse_rational)]
    n11: Option<sdcap_core::Rational>,
    #[arg(long, value_parser = parse::parse_rational)]
    n22: Option<sdcap_core::Rational>,
    /// Levels of transmitter 1 seen at receiver 2.
    #[arg(long, value_parser = parse::parse_rational)]
    n12: Option<sdcap_core::Rational>,
    /// Levels of transmitter 2 seen at receiver 1.
    #[arg(long, value_parser = parse::parse_rational)]
    n21: Option<sdcap_core::Rational>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Deterministic sum capacity, the optimal scheme and its message count.
    DetCapacity {
        #[command(flatten)]
        det: DetArgs,
        /// Emit the capacity curve and its envelope on an alpha grid instead
        /// (only `8` is recognized).
        #[arg(long)]
        figure: Option<u32>,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Optimal deterministic scheme, or a feasibility check of a given one.
    DetScheme {
        #[command(flatten)]
        det: DetArgs,
        /// JSON file (or `-` for stdin) with `{"user1": [[lo, hi], ...],
        /// "user2": [...]}` to check instead.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Translate the deterministic optimum into a Gaussian scheme.
    Translate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value_t = commands::Algorithm::Both)]
        algorithm: commands::Algorithm,
    },
    /// Rates of a successive-decoding scheme or a two-message power split.
    EvalScheme {
        #[command(flatten)]
        channel: ChannelArgs,
        /// JSON scheme file (or `-` for stdin) with `powers_user1`,
        /// `powers_user2`, `order_rx1`, `order_rx2`; messages are
        /// `[user, index]`, both 1-based.
        #[arg(long, conflicts_with = "split")]
        scheme: Option<PathBuf>,
        /// Common and private powers `q1c,q1p,q2c,q2p`.
        #[arg(long, value_delimiter = ',')]
        split: Vec<f64>,
    },
    /// Symmetric private-power sweep of joint and successive decoding.
    HkSweep {
        /// Defaults to gains 1,0.17, noise 1, power 1000.
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Translations, single-message baseline and bounds against alpha.
    SweepAlpha {
        #[arg(long, default_value_t = 30.0)]
        snr_db: f64,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Gap curves against SNR at the two reference alphas.
    SweepSnr {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Both upper bounds, their minimum and maximizers.
    Bounds {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Debug, Subcommand)]
enum OracleKind {
    /// Exhaustive search over integer level assignments.
    Det {
        #[arg(long)]
        n11: u32,
        #[arg(long)]
        n22: u32,
        #[arg(long)]
        n12: u32,
        #[arg(long)]
        n21: u32,
        /// Maximum messages (runs of active levels) per user: `l1,l2`.
        #[arg(long, value_delimiter = ',')]
        caps: Vec<u32>,
    },
    /// Grid search over decoding orders and message powers.
    Gauss {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Messages per user: `l1,l2` (each 1 to 3).
        #[arg(long, value_delimiter = ',', default_values_t = [2, 2])]
        messages: Vec<usize>,
        /// Both users share powers and mirrored orders.
        #[arg(long)]
        symmetric: bool,
        /// Grid step of the power tails, in dB.
        #[arg(long, default_value_t = 0.25)]
        step_db: f64,
        /// Grid extent below the budget, in dB.
        #[arg(long, default_value_t = 60.0)]
        range_db: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if g.workers > 0 {
        // Only fails if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(g.workers).build_global();
    }
    let sink = Sink { format: g.format, precision: g.precision as usize, path: g.output.clone() };
    let cfg = sdcap_core::oracle::OracleConfig { workers: g.workers, budget: g.budget };
    match commands::run(cli.command, &sink, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sdcap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
