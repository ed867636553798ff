//! Subcommand implementations.

use crate::error::{usage, CliError};
use crate::output::{Format, Sink};
use crate::{Command, DetArgs, OracleKind, RangeArgs};
use sdcap_core::bounds::combined_bound;
use sdcap_core::det::{complementarity_ok, message_count, symmetric_optimum, w_curve};
use sdcap_core::det_asym::{classify, optimal_asym_scheme, AsymCaseTag};
use sdcap_core::gauss::{
    hk_region_sum, linear_to_db, sd_rates, sd_two_message_sum, GaussianChannel, HkPowerSplit, SdRates, SdScheme, User,
};
use sdcap_core::oracle::{det_exhaustive_filtered, gauss_exhaustive, IntLevelParams, OracleConfig, PowerGrid};
use sdcap_core::sweep::{
    alpha_sweep, bound_crossover, det_curve, predicted_gap_slopes, private_power_sweep, snr_sweep,
    summarize_private_power, SweepSpec, SweepVariable, GAP_ALPHA_HK, GAP_ALPHA_SD,
};
use sdcap_core::translate::{translate_equalizing, translate_simple, TranslationResult};
use sdcap_core::{DeterministicChannel, Level, LevelScheme, Rational};
use serde::Serialize;
use serde_json::{Map, Value};
use std::io::Read;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Simple,
    Equalizing,
    Both,
}

const NO_SUMMARY: Option<&()> = None;

pub fn run(cmd: Command, sink: &Sink, cfg: &OracleConfig) -> Result<(), CliError> {
    match cmd {
        Command::DetCapacity { det, figure, range } => det_capacity(&det, figure, range, sink),
        Command::DetScheme { det, check } => det_scheme(&det, check.as_deref(), sink),
        Command::Translate { channel, algorithm } => translate(&channel.resolve()?, algorithm, sink),
        Command::EvalScheme { channel, scheme, split } => {
            eval_scheme(&channel.resolve()?, scheme.as_deref(), &split, sink)
        }
        Command::HkSweep { channel, range } => {
            let ch = match channel.resolve_opt()? {
                Some(ch) => ch,
                None => GaussianChannel::symmetric(1.0, 0.17, 1.0, 1000.0)?,
            };
            hk_sweep(&ch, range, sink)
        }
        Command::SweepAlpha { snr_db, range } => sweep_alpha(snr_db, range, sink),
        Command::SweepSnr { range } => sweep_snr(range, sink),
        Command::Bounds { channel } => bounds(&channel.resolve()?, sink),
        Command::Oracle { kind } => oracle(kind, sink, cfg),
    }
}

fn sweep_spec(var: SweepVariable, r: RangeArgs, default: (f64, f64, f64)) -> Result<SweepSpec, CliError> {
    Ok(SweepSpec::new(var, r.lo.unwrap_or(default.0), r.hi.unwrap_or(default.1), r.step.unwrap_or(default.2))?)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn exact(x: Rational) -> String {
    x.to_string()
}

enum DetChannel {
    Symmetric(Rational),
    General(DeterministicChannel<Rational>),
}

impl DetArgs {
    fn resolve(&self) -> Result<DetChannel, CliError> {
        let gains = [self.n11, self.n22, self.n12, self.n21];
        let given = gains.iter().filter(|g| g.is_some()).count();
        match (self.alpha, given) {
            (Some(a), 0) => Ok(DetChannel::Symmetric(a)),
            (None, 4) => {
                let [a, b, c, d] = gains.map(Option::unwrap);
                Ok(DetChannel::General(DeterministicChannel::new(a, b, c, d)?))
            }
            (Some(_), _) => usage("--alpha cannot be combined with --n11/--n22/--n12/--n21"),
            (None, 0) => usage("give --alpha, or all of --n11 --n22 --n12 --n21"),
            (None, _) => usage("all four of --n11 --n22 --n12 --n21 are required"),
        }
    }
}

#[derive(Serialize)]
struct SymmetricCapacity {
    alpha: f64,
    alpha_exact: String,
    /// Per-user rate normalized by the direct gain.
    capacity_norm: f64,
    capacity_exact: String,
    sum_norm: f64,
    w_curve_norm: f64,
    min_messages: usize,
    time_sharing: bool,
    scheme_messages: Option<usize>,
    scheme: Option<LevelScheme<Rational>>,
}

#[derive(Serialize)]
struct AsymCapacity {
    channel: DeterministicChannel<Rational>,
    case: AsymCaseTag,
    sum_levels: f64,
    sum_exact: String,
    rate1_levels: f64,
    rate2_levels: f64,
    messages: (usize, usize),
    scheme: LevelScheme<Rational>,
}

fn asym_capacity(ch: DeterministicChannel<Rational>) -> Result<AsymCapacity, CliError> {
    let case = classify(&ch)?.tag;
    let (scheme, sum) = optimal_asym_scheme(&ch)?;
    Ok(AsymCapacity {
        channel: ch,
        case,
        sum_levels: sum.to_f64_lossy(),
        sum_exact: exact(sum),
        rate1_levels: scheme.rate1().to_f64_lossy(),
        rate2_levels: scheme.rate2().to_f64_lossy(),
        messages: message_count(&scheme),
        scheme,
    })
}

fn det_capacity(det: &DetArgs, figure: Option<u32>, range: RangeArgs, sink: &Sink) -> Result<(), CliError> {
    match figure {
        Some(8) => {
            if det.alpha.is_some() || det.n11.is_some() {
                return usage("--figure 8 takes an alpha range (--lo, --hi, --step), not a channel");
            }
            let alphas = sweep_spec(SweepVariable::Alpha, range, (0.0, 1.0, 0.005))?.points();
            return sink.table(&det_curve(&alphas)?, NO_SUMMARY);
        }
        Some(n) => return usage(format!("unknown figure {n}; only 8 is available")),
        None => {}
    }
    match det.resolve()? {
        DetChannel::Symmetric(alpha) => {
            let opt = symmetric_optimum(alpha)?;
            sink.record(&SymmetricCapacity {
                alpha: alpha.to_f64_lossy(),
                alpha_exact: exact(alpha),
                capacity_norm: opt.rate.to_f64_lossy(),
                capacity_exact: exact(opt.rate),
                sum_norm: 2.0 * opt.rate.to_f64_lossy(),
                w_curve_norm: w_curve(alpha)?.to_f64_lossy(),
                min_messages: opt.min_messages,
                time_sharing: opt.time_sharing,
                scheme_messages: opt.scheme.as_ref().map(|s| s.user1().len()),
                scheme: opt.scheme,
            })
        }
        DetChannel::General(ch) => sink.record(&asym_capacity(ch)?),
    }
}

#[derive(Serialize)]
struct SchemeCheck {
    complementary: bool,
    rate1_levels: f64,
    rate2_levels: f64,
    sum_levels: f64,
    messages: (usize, usize),
}

fn det_scheme(det: &DetArgs, check: Option<&Path>, sink: &Sink) -> Result<(), CliError> {
    let ch = match det.resolve()? {
        DetChannel::Symmetric(a) => DeterministicChannel::symmetric(a)?,
        DetChannel::General(ch) => ch,
    };
    if let Some(path) = check {
        let s: LevelScheme<f64> = serde_json::from_str(&read_input(path)?)?;
        let chf = DeterministicChannel::new(
            ch.n11().to_f64_lossy(),
            ch.n22().to_f64_lossy(),
            ch.n12().to_f64_lossy(),
            ch.n21().to_f64_lossy(),
        )?;
        s.check_ranges(&chf)?;
        return sink.record(&SchemeCheck {
            complementary: complementarity_ok(&chf, &s, f64::tol()),
            rate1_levels: s.rate1(),
            rate2_levels: s.rate2(),
            sum_levels: s.sum_rate(),
            messages: message_count(&s),
        });
    }
    sink.record(&asym_capacity(ch)?)
}

#[derive(Serialize)]
struct MessageRow {
    algorithm: &'static str,
    message: usize,
    power_lin: f64,
    power_db: f64,
    rate_user1_bits: f64,
    rate_user2_bits: f64,
}

#[derive(Serialize)]
struct TranslationOut {
    algorithm: &'static str,
    messages: usize,
    achieved_sum_bits: f64,
    equalization_residual: f64,
    per_message: Vec<MessageRow>,
    scheme: SdScheme,
}

fn translation_out(name: &'static str, t: TranslationResult) -> TranslationOut {
    let per_message = t
        .powers
        .iter()
        .enumerate()
        .map(|(i, &p)| MessageRow {
            algorithm: name,
            message: i + 1,
            power_lin: p,
            power_db: linear_to_db(p),
            rate_user1_bits: t.rates.rates(User::One)[i],
            rate_user2_bits: t.rates.rates(User::Two)[i],
        })
        .collect();
    TranslationOut {
        algorithm: name,
        messages: t.messages,
        achieved_sum_bits: t.achieved_sum,
        equalization_residual: t.equalization_residual,
        per_message,
        scheme: t.scheme,
    }
}

fn translate(ch: &GaussianChannel, alg: Algorithm, sink: &Sink) -> Result<(), CliError> {
    let mut out = Vec::new();
    if alg != Algorithm::Equalizing {
        out.push(translation_out("simple", translate_simple(ch)?));
    }
    if alg != Algorithm::Simple {
        out.push(translation_out("equalizing", translate_equalizing(ch)?));
    }
    if sink.format == Some(Format::Csv) {
        let mut summary = Map::new();
        for t in &out {
            summary.insert(format!("{}_sum_bits", t.algorithm), Value::from(t.achieved_sum_bits));
        }
        let rows: Vec<MessageRow> = out.into_iter().flat_map(|t| t.per_message).collect();
        sink.table(&rows, Some(&summary))
    } else {
        sink.record(&out)
    }
}

#[derive(Serialize)]
struct SchemeEval {
    rate_user1_bits: f64,
    rate_user2_bits: f64,
    sum_bits: f64,
    rates: SdRates,
}

#[derive(Serialize)]
struct SplitEval {
    hk_sum_bits: f64,
    sd_sum_bits: f64,
    sd_rates: SdRates,
}

fn eval_scheme(ch: &GaussianChannel, scheme: Option<&Path>, split: &[f64], sink: &Sink) -> Result<(), CliError> {
    if let Some(path) = scheme {
        let s: SdScheme = serde_json::from_str(&read_input(path)?)?;
        let r = sd_rates(ch, &s)?;
        return sink.record(&SchemeEval {
            rate_user1_bits: r.user_sum(User::One),
            rate_user2_bits: r.user_sum(User::Two),
            sum_bits: r.sum,
            rates: r,
        });
    }
    let [q1c, q1p, q2c, q2p] = split[..] else {
        return usage("give --scheme FILE or --split q1c,q1p,q2c,q2p");
    };
    let split = HkPowerSplit::new(q1c, q1p, q2c, q2p)?;
    sink.record(&SplitEval {
        hk_sum_bits: hk_region_sum(ch, &split)?,
        sd_sum_bits: sd_two_message_sum(ch, &split)?,
        sd_rates: sd_rates(ch, &split.to_sd_scheme())?,
    })
}

fn hk_sweep(ch: &GaussianChannel, range: RangeArgs, sink: &Sink) -> Result<(), CliError> {
    let q = sweep_spec(SweepVariable::QpDb, range, (-30.0, 30.0, 0.1))?.points();
    let rows = private_power_sweep(ch, &q)?;
    sink.table(&rows, summarize_private_power(&rows).as_ref())
}

#[derive(Serialize)]
struct AlphaSummary {
    snr_db: f64,
    bound_crossover_alpha: Option<f64>,
}

fn sweep_alpha(snr_db: f64, range: RangeArgs, sink: &Sink) -> Result<(), CliError> {
    if !(snr_db > 0.0) {
        return usage("--snr-db must be positive");
    }
    let alphas = sweep_spec(SweepVariable::Alpha, range, (0.5, 1.0, 0.005))?.points();
    let rows = alpha_sweep(snr_db, &alphas)?;
    sink.table(&rows, Some(&AlphaSummary { snr_db, bound_crossover_alpha: bound_crossover(&rows) }))
}

#[derive(Serialize)]
struct SnrSummary {
    alpha_sd: f64,
    alpha_hk: f64,
    predicted_slope_sd_single: f64,
    predicted_slope_hk_sd: f64,
}

fn sweep_snr(range: RangeArgs, sink: &Sink) -> Result<(), CliError> {
    let snr = sweep_spec(SweepVariable::SnrDb, range, (10.0, 90.0, 5.0))?.points();
    let rows = snr_sweep(&snr)?;
    let (s1, s2) = predicted_gap_slopes()?;
    let summary = SnrSummary {
        alpha_sd: GAP_ALPHA_SD,
        alpha_hk: GAP_ALPHA_HK,
        predicted_slope_sd_single: s1,
        predicted_slope_hk_sd: s2,
    };
    sink.table(&rows, Some(&summary))
}

#[derive(Serialize)]
struct Maximizer {
    q1_lin: f64,
    q2_lin: f64,
    q1_db: f64,
    q2_db: f64,
}

impl From<(f64, f64)> for Maximizer {
    fn from((q1, q2): (f64, f64)) -> Self {
        Self { q1_lin: q1, q2_lin: q2, q1_db: linear_to_db(q1), q2_db: linear_to_db(q2) }
    }
}

#[derive(Serialize)]
struct BoundsOut {
    ub1_bits: f64,
    ub2_bits: f64,
    min_ub_bits: f64,
    ub1_argmax: Maximizer,
    ub2_argmax: Maximizer,
}

fn bounds(ch: &GaussianChannel, sink: &Sink) -> Result<(), CliError> {
    let b = combined_bound(ch);
    sink.record(&BoundsOut {
        ub1_bits: b.opt1,
        ub2_bits: b.opt2,
        min_ub_bits: b.combined,
        ub1_argmax: b.q_star_1.into(),
        ub2_argmax: b.q_star_2.into(),
    })
}

#[derive(Serialize)]
struct DetOracleOut {
    max_sum: Option<u32>,
    messages: Option<(u32, u32)>,
    scheme: Option<LevelScheme<Rational>>,
    evaluated_count: u64,
    feasible_count: u64,
    elapsed_s: f64,
}

#[derive(Serialize)]
struct GaussOracleOut {
    max_sum: f64,
    scheme: SdScheme,
    evaluated_count: u64,
    elapsed_s: f64,
}

fn oracle(kind: OracleKind, sink: &Sink, cfg: &OracleConfig) -> Result<(), CliError> {
    match kind {
        OracleKind::Det { n11, n22, n12, n21, caps } => {
            let caps = match caps[..] {
                [] => (None, None),
                [a, b] => (Some(a), Some(b)),
                _ => return usage("--caps takes two values"),
            };
            let r = det_exhaustive_filtered(IntLevelParams::new(n11, n22, n12, n21), caps, |_, _| true, cfg)?;
            let best = r.witnesses.first();
            sink.record(&DetOracleOut {
                max_sum: r.max_sum,
                messages: best.map(|w| w.messages()),
                scheme: best.map(|w| w.to_level_scheme()).transpose()?,
                evaluated_count: r.stats.evaluated,
                feasible_count: r.stats.feasible,
                elapsed_s: r.stats.elapsed.as_secs_f64(),
            })
        }
        OracleKind::Gauss { channel, messages, symmetric, step_db, range_db } => {
            let ch = channel.resolve()?;
            let grid = PowerGrid { step_db, range_db };
            let [l1, l2] = messages[..] else { return usage("--messages takes two values") };
            let r = gauss_exhaustive(&ch, l1, l2, &grid, symmetric, cfg)?;
            sink.record(&GaussOracleOut {
                max_sum: r.best_sum,
                scheme: r.scheme,
                evaluated_count: r.stats.evaluated,
                elapsed_s: r.stats.elapsed.as_secs_f64(),
            })
        }
    }
}
