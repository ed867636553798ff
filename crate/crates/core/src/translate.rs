//! Turning the optimal deterministic scheme into a Gaussian power allocation
//! for symmetric channels.
//!
//! Both translations give each user `L` superposed messages with powers
//! `p(1) > ... > p(L)` and decode them with the alternating orders of
//! [`canonical_orders`]: messages `1..L-1` are decoded at both receivers,
//! message `L` only at its own.

use crate::det::{message_count, symmetric_optimum};
use crate::error::{domain, Error, Result};
use crate::gauss::{sd_rates, GaussianChannel, MessageId, SdRates, SdScheme, User};
use serde::Serialize;

/// Guard against runaway recursion when the cross gain is within rounding
/// of the direct gain.
const MAX_MESSAGES: usize = 1_000_000;

/// Which translation produced a [`TranslationResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Translation {
    /// Geometric powers with ratio `(g12 / g11)^2`.
    Simple,
    /// Powers chosen so every common message has equal rate bounds at both
    /// receivers.
    Equalizing,
}

/// A translated scheme and its achieved rates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationResult {
    pub algorithm: Translation,
    /// Messages per user.
    pub messages: usize,
    /// Per-message powers, shared by both users, in decoding order.
    pub powers: Vec<f64>,
    pub scheme: SdScheme,
    pub rates: SdRates,
    pub achieved_sum: f64,
    /// Largest relative gap between the two receivers' bounds on a common
    /// message.
    pub equalization_residual: f64,
}

/// Orders for `l` messages per user.
///
/// Receiver 1 decodes `x1(1), x2(1), x1(2), x2(2), ..., x1(L-1), x2(L-1), x1(L)`
/// and receiver 2 the mirror image. This follows the level stacking of the
/// deterministic scheme, where user 2's `l`-th segment lands between user
/// 1's `l`-th and `(l+1)`-th at receiver 1.
pub fn canonical_orders(l: usize) -> (Vec<MessageId>, Vec<MessageId>) {
    let order = |own: User| {
        let mut v = Vec::with_capacity(2 * l);
        for i in 0..l {
            v.push(MessageId::new(own, i));
            if i + 1 < l {
                v.push(MessageId::new(own.other(), i));
            }
        }
        v
    };
    (order(User::One), order(User::Two))
}

fn require_symmetric(ch: &GaussianChannel) -> Result<()> {
    if !ch.is_symmetric() {
        return Err(Error::Unsupported("translations need a symmetric channel".into()));
    }
    if ch.g12() > ch.g11() {
        return Err(Error::Unsupported("translations need g12 <= g11".into()));
    }
    Ok(())
}

fn finish(ch: &GaussianChannel, algorithm: Translation, powers: Vec<f64>) -> Result<TranslationResult> {
    let l = powers.len();
    let (order_rx1, order_rx2) = canonical_orders(l);
    let scheme = SdScheme { powers_user1: powers.clone(), powers_user2: powers.clone(), order_rx1, order_rx2 };
    let rates = sd_rates(ch, &scheme)?;
    let mut residual: f64 = 0.0;
    for user in User::BOTH {
        for i in 0..l.saturating_sub(1) {
            if let [Some(a), Some(b)] = rates.bounds(MessageId::new(user, i)) {
                let scale = a.abs().max(b.abs());
                if scale > 0.0 {
                    residual = residual.max((a - b).abs() / scale);
                }
            }
        }
    }
    Ok(TranslationResult {
        algorithm,
        messages: l,
        achieved_sum: rates.sum,
        powers,
        scheme,
        rates,
        equalization_residual: residual,
    })
}

/// Number of messages per user in the optimal deterministic scheme at the
/// channel's `alpha = log INR / log SNR`.
///
/// Where the minimum-message optimum time-shares (alpha = (2n-1)/2n), this
/// still counts the level scheme's messages, since that is the scheme being
/// translated. Outside `0 < alpha < 1` it is 1.
pub fn deterministic_message_count(ch: &GaussianChannel) -> Result<usize> {
    let snr = ch.snr(User::One);
    let inr = ch.inr(User::One);
    if snr <= 1.0 || inr <= 1.0 {
        return Ok(1);
    }
    let alpha = ch.alpha();
    if alpha >= 1.0 {
        return Ok(1);
    }
    let opt = symmetric_optimum(alpha)?;
    Ok(opt.scheme.as_ref().map_or(1, |s| message_count(s).0))
}

/// Direct power scaling: `L` from the deterministic scheme, powers in
/// geometric ratio `(g12 / g11)^2`, summing to the budget.
pub fn translate_simple(ch: &GaussianChannel) -> Result<TranslationResult> {
    require_symmetric(ch)?;
    let l = deterministic_message_count(ch)?;
    let ratio = (ch.g12() / ch.g11()).powi(2);
    let weights: Vec<f64> = (0..l).map(|i| ratio.powi(i as i32)).collect();
    let total: f64 = weights.iter().sum();
    let budget = ch.p1();
    let mut powers: Vec<f64> = weights.iter().map(|w| budget * w / total).collect();
    let head: f64 = powers[..l - 1].iter().sum();
    powers[l - 1] = budget - head;
    finish(ch, Translation::Simple, powers)
}

/// One step of the equalizing recursion on a normalized channel
/// (`g11 = 1`, `N = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EqualizingStep {
    /// The whole remaining budget goes to one private message.
    Single { power: f64 },
    /// A common message takes `first`; `remainder` is left for the rest.
    Split { first: f64, remainder: f64 },
}

/// Power of the next common message so that its rate bounds at the two
/// receivers coincide, or [`EqualizingStep::Single`] when
/// `pbar <= (1 - g) / g^2` and a private message is best.
///
/// `g = 1` is degenerate (the split would be empty) and returns `Single`.
pub fn equalizing_split(g12: f64, pbar: f64) -> Result<EqualizingStep> {
    if !(0.0..=1.0).contains(&g12) {
        return domain(format!("normalized cross gain must lie in [0, 1], got {g12}"));
    }
    if !(pbar.is_finite() && pbar >= 0.0) {
        return domain(format!("budget must be nonnegative, got {pbar}"));
    }
    if g12 == 0.0 || g12 == 1.0 || pbar <= (1.0 - g12) / (g12 * g12) {
        return Ok(EqualizingStep::Single { power: pbar });
    }
    let first = 1.0 - g12 + (1.0 - g12 * g12) * pbar;
    Ok(EqualizingStep::Split { first, remainder: pbar - first })
}

/// Rate-equalizing translation: peel common messages with
/// [`equalizing_split`] until the rest fits one private message.
pub fn translate_equalizing(ch: &GaussianChannel) -> Result<TranslationResult> {
    require_symmetric(ch)?;
    // Normalize to g11 = 1, N = 1: powers scale by g11 / N.
    let unit = ch.g11() / ch.n1();
    let g = ch.g12() / ch.g11();
    let mut left = ch.p1() * unit;
    let mut norm = Vec::new();
    loop {
        match equalizing_split(g, left)? {
            EqualizingStep::Single { power } => {
                norm.push(power);
                break;
            }
            EqualizingStep::Split { first, remainder } => {
                norm.push(first);
                left = remainder;
            }
        }
        if norm.len() > MAX_MESSAGES {
            return Err(Error::Unsupported("equalizing recursion does not terminate".into()));
        }
    }
    let budget = ch.p1();
    let mut powers: Vec<f64> = norm.iter().map(|p| p / unit).collect();
    let l = powers.len();
    let head: f64 = powers[..l - 1].iter().sum();
    powers[l - 1] = budget - head;
    finish(ch, Translation::Equalizing, powers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::db_to_linear;
    use proptest::prelude::*;

    #[test]
    fn orders_for_three_messages() {
        let (r1, r2) = canonical_orders(3);
        let m = MessageId::new;
        use User::{One, Two};
        assert_eq!(r1, vec![m(One, 0), m(Two, 0), m(One, 1), m(Two, 1), m(One, 2)]);
        assert_eq!(r2, vec![m(Two, 0), m(One, 0), m(Two, 1), m(One, 1), m(Two, 2)]);
        assert_eq!(canonical_orders(1).0, vec![m(One, 0)]);
    }

    #[test]
    fn simple_geometric_powers() {
        // g12 / g11 = 0.1 with a two-message deterministic scheme (alpha ~ 0.667).
        let ch = GaussianChannel::symmetric(1.0, 0.1, 1.0, 1000.0).unwrap();
        let r = translate_simple(&ch).unwrap();
        assert_eq!(r.messages, 2);
        assert!((r.powers[0] - 1000.0 / (1.0 + 1e-2)).abs() < 1e-9);
        assert!((r.powers[1] / r.powers[0] - 1e-2).abs() < 1e-12);
        assert!((r.powers.iter().sum::<f64>() - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn weak_interference_uses_one_message() {
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.4).unwrap();
        for r in [translate_simple(&ch).unwrap(), translate_equalizing(&ch).unwrap()] {
            assert_eq!(r.messages, 1);
            assert_eq!(r.powers, vec![1000.0]);
        }
    }

    #[test]
    fn degenerate_point_uses_level_scheme_count() {
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.75).unwrap();
        assert_eq!(deterministic_message_count(&ch).unwrap(), 2);
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.8).unwrap();
        assert_eq!(deterministic_message_count(&ch).unwrap(), 3);
    }

    #[test]
    fn split_threshold_and_formula() {
        let g = 0.3;
        let t = (1.0 - g) / (g * g);
        assert_eq!(equalizing_split(g, t).unwrap(), EqualizingStep::Single { power: t });
        // The split formula is continuous at the threshold.
        let at = 1.0 - g + (1.0 - g * g) * t;
        assert!((at - t).abs() < 1e-12);
        match equalizing_split(g, 2.0 * t).unwrap() {
            EqualizingStep::Split { first, remainder } => {
                assert!(first < 2.0 * t && remainder > 0.0);
                assert!((first - (1.0 - g + (1.0 - g * g) * 2.0 * t)).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(equalizing_split(0.0, 1e9).unwrap(), EqualizingStep::Single { power: 1e9 });
        assert!(equalizing_split(1.2, 10.0).is_err());
        assert!(equalizing_split(-0.1, 10.0).is_err());
    }

    #[test]
    fn first_split_equalizes_both_receivers() {
        let ch = GaussianChannel::from_snr_alpha(30.0, 0.75).unwrap();
        let r = translate_equalizing(&ch).unwrap();
        assert!(r.messages >= 2);
        let [a, b] = r.rates.bounds(MessageId::new(User::One, 0));
        assert!((a.unwrap() - b.unwrap()).abs() <= 1e-9 * a.unwrap());
    }

    #[test]
    fn worked_example_channel() {
        // g = 0.17, p = 1000: two messages, the first near 972.
        let ch = GaussianChannel::symmetric(1.0, 0.17, 1.0, 1000.0).unwrap();
        let r = translate_equalizing(&ch).unwrap();
        assert_eq!(r.messages, 2);
        assert!((r.powers[0] - 971.9).abs() < 0.1, "{}", r.powers[0]);
        assert!((r.achieved_sum - 10.2).abs() < 0.05, "{}", r.achieved_sum);
    }

    #[test]
    fn normalization_is_invisible() {
        // Scaling gains and noise together leaves rates unchanged.
        let a = GaussianChannel::symmetric(1.0, 0.2, 1.0, db_to_linear(30.0)).unwrap();
        let b = GaussianChannel::symmetric(4.0, 0.8, 4.0, db_to_linear(30.0)).unwrap();
        let ra = translate_equalizing(&a).unwrap();
        let rb = translate_equalizing(&b).unwrap();
        assert_eq!(ra.messages, rb.messages);
        assert!((ra.achieved_sum - rb.achieved_sum).abs() < 1e-9);
    }

    #[test]
    fn rejects_asymmetric_channels() {
        let ch = GaussianChannel::new(1.0, 0.2, 0.3, 1.0, 1.0, 1.0, 100.0, 100.0).unwrap();
        assert!(matches!(translate_simple(&ch), Err(Error::Unsupported(_))));
        assert!(matches!(translate_equalizing(&ch), Err(Error::Unsupported(_))));
    }

    proptest! {
        #[test]
        fn equalizing_invariants(alpha in 0.05f64..0.995, snr_db in 5.0f64..60.0) {
            let ch = GaussianChannel::from_snr_alpha(snr_db, alpha).unwrap();
            let r = translate_equalizing(&ch).unwrap();
            prop_assert!(r.equalization_residual < 1e-9, "{}", r.equalization_residual);
            prop_assert!(r.powers.iter().all(|p| *p > 0.0));
            let total: f64 = r.powers.iter().sum();
            prop_assert!((total - ch.p1()).abs() <= 1e-12 * ch.p1());
            prop_assert!(r.powers.windows(2).all(|w| w[0] >= w[1]) || r.messages <= 2);
        }

        #[test]
        fn simple_budget(alpha in 0.05f64..0.995, snr_db in 5.0f64..60.0) {
            let ch = GaussianChannel::from_snr_alpha(snr_db, alpha).unwrap();
            let r = translate_simple(&ch).unwrap();
            let total: f64 = r.powers.iter().sum();
            prop_assert!((total - ch.p1()).abs() <= 1e-12 * ch.p1());
            prop_assert!(r.powers.iter().all(|p| *p > 0.0));
        }
    }
}
