//! Parameter sweeps producing the data behind the capacity plots.
//!
//! Every sweep evaluates its points independently in parallel and returns
//! rows ordered by the swept variable.

use crate::bounds::combined_bound;
use crate::det::{limited_message_capacity, symmetric_capacity, w_curve};
use crate::error::{domain, Result};
use crate::gauss::{
    db_to_linear, hk_region_sum, linear_to_db, sd_two_message_sum, single_message_baseline, GaussianChannel,
    HkPowerSplit,
};
use crate::translate::{translate_equalizing, translate_simple};
use rayon::prelude::*;
use serde::Serialize;

/// Swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Alpha,
    SnrDb,
    QpDb,
}

/// An inclusive range `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

/// Cap on the number of points a sweep may produce.
pub const MAX_POINTS: usize = 1_000_000;

impl SweepSpec {
    pub fn new(variable: SweepVariable, lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return domain(format!("sweep range needs lo <= hi, got [{lo}, {hi}]"));
        }
        if !(step > 0.0 && step.is_finite()) {
            return domain(format!("sweep step must be positive, got {step}"));
        }
        let s = Self { variable, lo, hi, step };
        if s.count() > MAX_POINTS {
            return domain(format!("sweep has more than {MAX_POINTS} points"));
        }
        Ok(s)
    }

    fn count(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    /// Grid points, computed as `lo + i * step` and rounded to 12 decimals
    /// so that printed values do not carry accumulated error.
    pub fn points(&self) -> Vec<f64> {
        (0..self.count()).map(|i| ((self.lo + i as f64 * self.step) * 1e12).round() / 1e12).collect()
    }
}

/// One point of the deterministic capacity curve and its envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetCurveRow {
    pub alpha: f64,
    pub capacity_norm: f64,
    pub w_curve_norm: f64,
}

/// `R(alpha)` and the information-theoretic envelope on a grid of `alpha`
/// in `[0, 1]`.
pub fn det_curve(alphas: &[f64]) -> Result<Vec<DetCurveRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            Ok(DetCurveRow { alpha, capacity_norm: symmetric_capacity(alpha)?, w_curve_norm: w_curve(alpha)? })
        })
        .collect()
}

/// One point of the symmetric private-power sweep on a fixed channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrivatePowerRow {
    pub qp_db: f64,
    pub hk_sum_bits: f64,
    pub sd_sum_bits: f64,
}

/// Maxima of a private-power sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrivatePowerSummary {
    pub hk_max_bits: f64,
    pub hk_argmax_db: f64,
    pub sd_max_bits: f64,
    pub sd_argmax_db: f64,
}

/// Both users put `10^(qp_db / 10)` on their private message (capped at the
/// budget) and the rest on the common one. Reports the joint-decoding sum
/// and the two-message successive-decoding sum.
pub fn private_power_sweep(ch: &GaussianChannel, qp_db: &[f64]) -> Result<Vec<PrivatePowerRow>> {
    if !ch.is_symmetric() {
        return Err(crate::Error::Unsupported("the private-power sweep needs a symmetric channel".into()));
    }
    qp_db
        .par_iter()
        .map(|&db| {
            let split = HkPowerSplit::symmetric(ch, db_to_linear(db).min(ch.p1()))?;
            Ok(PrivatePowerRow {
                qp_db: db,
                hk_sum_bits: hk_region_sum(ch, &split)?,
                sd_sum_bits: sd_two_message_sum(ch, &split)?,
            })
        })
        .collect()
}

/// Largest value and its location for both curves; ties go to the lower
/// power.
pub fn summarize_private_power(rows: &[PrivatePowerRow]) -> Option<PrivatePowerSummary> {
    let first = rows.first()?;
    let mut s = PrivatePowerSummary {
        hk_max_bits: first.hk_sum_bits,
        hk_argmax_db: first.qp_db,
        sd_max_bits: first.sd_sum_bits,
        sd_argmax_db: first.qp_db,
    };
    for r in &rows[1..] {
        if r.hk_sum_bits > s.hk_max_bits {
            s.hk_max_bits = r.hk_sum_bits;
            s.hk_argmax_db = r.qp_db;
        }
        if r.sd_sum_bits > s.sd_max_bits {
            s.sd_max_bits = r.sd_sum_bits;
            s.sd_argmax_db = r.qp_db;
        }
    }
    Some(s)
}

/// Best joint-decoding sum over symmetric splits, and the private power
/// achieving it.
///
/// Private powers run from the budget down to 30 dB below the noise on a
/// 0.1 dB grid, plus zero, and the best grid cell is refined by golden
/// section search over the neighbouring cells.
pub fn hk_symmetric_max(ch: &GaussianChannel) -> Result<(f64, f64)> {
    let eval = |q: f64| -> Result<f64> { hk_region_sum(ch, &HkPowerSplit::symmetric(ch, q.clamp(0.0, ch.p1()))?) };
    let top = linear_to_db(ch.p1());
    let bottom = linear_to_db(ch.n1()) - 30.0;
    let step = 0.1;
    let n = ((top - bottom) / step).ceil().max(0.0) as usize;
    let dbs: Vec<f64> = (0..=n).map(|i| top - i as f64 * step).collect();
    let vals: Vec<f64> = dbs.par_iter().map(|&d| eval(db_to_linear(d))).collect::<Result<_>>()?;
    let (mut bi, mut bv) = (0, vals[0]);
    for (i, &v) in vals.iter().enumerate() {
        if v > bv {
            bi = i;
            bv = v;
        }
    }
    let mut best = (bv, db_to_linear(dbs[bi]));
    let zero = eval(0.0)?;
    if zero > best.0 {
        best = (zero, 0.0);
    }
    // Golden section on [db - step, db + step] around the best grid point.
    let (mut a, mut b) = (dbs[bi] - step, (dbs[bi] + step).min(top));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let f = |d: f64| eval(db_to_linear(d));
    let (mut c, mut d) = (b - r * (b - a), a + r * (b - a));
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..40 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let (v, at) = if fc > fd { (fc, c) } else { (fd, d) };
    if v > best.0 {
        best = (v, db_to_linear(at));
    }
    Ok(best)
}

/// One point of the sweep over `alpha` at fixed SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaRow {
    pub alpha: f64,
    pub alg1_bits: f64,
    pub alg2_bits: f64,
    pub single_msg_bits: f64,
    pub ub1_bits: f64,
    pub ub2_bits: f64,
    pub min_ub_bits: f64,
}

/// Both translations, the single-message baseline and both bounds on the
/// symmetric channel with the given SNR and each `alpha`.
pub fn alpha_sweep(snr_db: f64, alphas: &[f64]) -> Result<Vec<AlphaRow>> {
    alphas
        .par_iter()
        .map(|&alpha| {
            let ch = GaussianChannel::from_snr_alpha(snr_db, alpha)?;
            let b = combined_bound(&ch);
            Ok(AlphaRow {
                alpha,
                alg1_bits: translate_simple(&ch)?.achieved_sum,
                alg2_bits: translate_equalizing(&ch)?.achieved_sum,
                single_msg_bits: single_message_baseline(&ch).sum,
                ub1_bits: b.opt1,
                ub2_bits: b.opt2,
                min_ub_bits: b.combined,
            })
        })
        .collect()
}

/// `alpha` at which the two bounds cross, by linear interpolation between
/// the first pair of rows where `ub1 - ub2` changes sign.
pub fn bound_crossover(rows: &[AlphaRow]) -> Option<f64> {
    rows.windows(2).find_map(|w| {
        let (d0, d1) = (w[0].ub1_bits - w[0].ub2_bits, w[1].ub1_bits - w[1].ub2_bits);
        if d0 == 0.0 {
            Some(w[0].alpha)
        } else if d0.signum() != d1.signum() {
            Some(w[0].alpha + (w[1].alpha - w[0].alpha) * d0 / (d0 - d1))
        } else {
            None
        }
    })
}

/// Alpha values where the successive-decoding to single-message gap and
/// the joint-decoding to successive-decoding gap are tracked over SNR.
pub const GAP_ALPHA_SD: f64 = 0.66;
pub const GAP_ALPHA_HK: f64 = 0.75;

/// One point of the sweep over SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrRow {
    pub snr_db: f64,
    /// Equalizing translation at `alpha = 0.66`.
    pub sd_066_bits: f64,
    pub single_066_bits: f64,
    /// `sd_066 - single_066`.
    pub gap_sd_single_bits: f64,
    /// Best symmetric joint-decoding split at `alpha = 0.75`.
    pub hk_075_bits: f64,
    /// Equalizing translation at `alpha = 0.75`.
    pub sd_075_bits: f64,
    /// `hk_075 - sd_075`.
    pub gap_hk_sd_bits: f64,
}

/// Gap curves over SNR.
pub fn snr_sweep(snr_db: &[f64]) -> Result<Vec<SnrRow>> {
    snr_db
        .par_iter()
        .map(|&snr| {
            let a = GaussianChannel::from_snr_alpha(snr, GAP_ALPHA_SD)?;
            let b = GaussianChannel::from_snr_alpha(snr, GAP_ALPHA_HK)?;
            let sd_066 = translate_equalizing(&a)?.achieved_sum;
            let single_066 = single_message_baseline(&a).sum;
            let hk_075 = hk_symmetric_max(&b)?.0;
            let sd_075 = translate_equalizing(&b)?.achieved_sum;
            Ok(SnrRow {
                snr_db: snr,
                sd_066_bits: sd_066,
                single_066_bits: single_066,
                gap_sd_single_bits: sd_066 - single_066,
                hk_075_bits: hk_075,
                sd_075_bits: sd_075,
                gap_hk_sd_bits: hk_075 - sd_075,
            })
        })
        .collect()
}

/// High-SNR slopes of the two gaps, in bits per bit of `log2(SNR)`, from the
/// deterministic model: successive decoding against one message per user
/// at 0.66, and the information-theoretic envelope against successive
/// decoding at 0.75. Both are sum-rate differences.
pub fn predicted_gap_slopes() -> Result<(f64, f64)> {
    let sd = 2.0 * symmetric_capacity(GAP_ALPHA_SD)? - limited_message_capacity(GAP_ALPHA_SD, 1, 1)?;
    let hk = 2.0 * (w_curve(GAP_ALPHA_HK)? - symmetric_capacity(GAP_ALPHA_HK)?);
    Ok((sd, hk))
}
