//! One common plus one private message per user.

use super::lp;
use super::{GaussianChannel, MessageId, SdScheme, User};
use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Powers of the common (`c`) and private (`p`) messages of both users.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HkPowerSplit {
    pub q1c: f64,
    pub q1p: f64,
    pub q2c: f64,
    pub q2p: f64,
}

impl HkPowerSplit {
    pub fn new(q1c: f64, q1p: f64, q2c: f64, q2p: f64) -> Result<Self> {
        for v in [q1c, q1p, q2c, q2p] {
            if !(v.is_finite() && v >= 0.0) {
                return domain(format!("message powers must be nonnegative, got {v}"));
            }
        }
        Ok(Self { q1c, q1p, q2c, q2p })
    }

    /// Both users put `private` on the private message and the rest of
    /// their budget on the common one.
    pub fn symmetric(ch: &GaussianChannel, private: f64) -> Result<Self> {
        let p1 = private.min(ch.p1());
        let p2 = private.min(ch.p2());
        Self::new(ch.p1() - p1, p1, ch.p2() - p2, p2)
    }

    pub fn validate(&self, ch: &GaussianChannel) -> Result<()> {
        Self::new(self.q1c, self.q1p, self.q2c, self.q2p)?;
        let slack = 1.0 + 1e-9;
        if self.q1c + self.q1p > ch.p1() * slack || self.q2c + self.q2p > ch.p2() * slack {
            return domain("power split exceeds a budget");
        }
        Ok(())
    }

    /// The successive-decoding scheme with orders
    /// `x1c -> x2c -> x1p` at receiver 1 and `x2c -> x1c -> x2p` at receiver 2.
    pub fn to_sd_scheme(&self) -> SdScheme {
        let m = MessageId::new;
        SdScheme {
            powers_user1: vec![self.q1c, self.q1p],
            powers_user2: vec![self.q2c, self.q2p],
            order_rx1: vec![m(User::One, 0), m(User::Two, 0), m(User::One, 1)],
            order_rx2: vec![m(User::Two, 0), m(User::One, 0), m(User::Two, 1)],
        }
    }
}

fn log1p2(x: f64) -> f64 {
    (1.0 + x).log2()
}

/// The fourteen joint-decoding rate constraints over
/// `(r1c, r1p, r2c, r2p)`, as `(coefficients, bound)` rows.
pub fn hk_constraints(ch: &GaussianChannel, s: &HkPowerSplit) -> Vec<([f64; 4], f64)> {
    let mut rows = Vec::with_capacity(14);
    for rx in User::BOTH {
        let tx = rx.other();
        let (own_c, own_p, oth_c, oth_p) = match rx {
            User::One => (s.q1c, s.q1p, s.q2c, s.q2p),
            User::Two => (s.q2c, s.q2p, s.q1c, s.q1p),
        };
        let g_own = ch.gain(rx, rx);
        let g_x = ch.gain(tx, rx);
        let floor = g_x * oth_p + ch.noise(rx);
        // Coefficient vector from (own common, own private, other common).
        let row = |oc: f64, op: f64, xc: f64| -> [f64; 4] {
            match rx {
                User::One => [oc, op, xc, 0.0],
                User::Two => [xc, 0.0, oc, op],
            }
        };
        rows.push((row(1.0, 1.0, 1.0), log1p2((g_own * (own_c + own_p) + g_x * oth_c) / floor)));
        rows.push((row(1.0, 0.0, 1.0), log1p2((g_own * own_c + g_x * oth_c) / floor)));
        rows.push((row(1.0, 1.0, 0.0), log1p2(g_own * (own_c + own_p) / floor)));
        rows.push((row(0.0, 1.0, 1.0), log1p2((g_own * own_p + g_x * oth_c) / floor)));
        rows.push((row(1.0, 0.0, 0.0), log1p2(g_own * own_c / floor)));
        rows.push((row(0.0, 0.0, 1.0), log1p2(g_x * oth_c / floor)));
        rows.push((row(0.0, 1.0, 0.0), log1p2(g_own * own_p / floor)));
    }
    rows
}

/// Largest `r1c + r1p + r2c + r2p` in the joint-decoding region of `split`.
pub fn hk_region_sum(ch: &GaussianChannel, split: &HkPowerSplit) -> Result<f64> {
    split.validate(ch)?;
    let rows = hk_constraints(ch, split);
    let (_, v) = lp::maximize([1.0; 4], &rows).expect("the origin is always feasible");
    Ok(v)
}

/// Sum of the successive-decoding bounds for the fixed orders
/// `x1c -> x2c -> x1p` and `x2c -> x1c -> x2p`.
pub fn sd_two_message_sum(ch: &GaussianChannel, split: &HkPowerSplit) -> Result<f64> {
    split.validate(ch)?;
    let (g11, g12, g21, g22) = (ch.g11(), ch.g12(), ch.g21(), ch.g22());
    let (n1, n2) = (ch.n1(), ch.n2());
    let s = split;
    let r1c = log1p2(g11 * s.q1c / (g11 * s.q1p + g21 * (s.q2c + s.q2p) + n1))
        .min(log1p2(g12 * s.q1c / (g22 * s.q2p + g12 * s.q1p + n2)));
    let r2c = log1p2(g22 * s.q2c / (g22 * s.q2p + g12 * (s.q1c + s.q1p) + n2))
        .min(log1p2(g21 * s.q2c / (g11 * s.q1p + g21 * s.q2p + n1)));
    let r1p = log1p2(g11 * s.q1p / (g21 * s.q2p + n1));
    let r2p = log1p2(g22 * s.q2p / (g12 * s.q1p + n2));
    Ok(r1c + r2c + r1p + r2p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{db_to_linear, sd_rates};
    use proptest::prelude::*;

    fn example() -> GaussianChannel {
        GaussianChannel::symmetric(1.0, 0.17, 1.0, 1000.0).unwrap()
    }

    #[test]
    fn worked_example_without_private_power() {
        let ch = example();
        let split = HkPowerSplit::symmetric(&ch, 0.0).unwrap();
        assert!((hk_region_sum(&ch, &split).unwrap() - 10.19).abs() < 0.01);
        assert!((sd_two_message_sum(&ch, &split).unwrap() - 5.56).abs() < 0.01);
    }

    #[test]
    fn optimum_neighbourhoods() {
        let ch = example();
        let hk = hk_region_sum(&ch, &HkPowerSplit::symmetric(&ch, db_to_linear(6.2)).unwrap()).unwrap();
        assert!((hk - 11.2).abs() < 0.05, "{hk}");
        let sd = sd_two_message_sum(&ch, &HkPowerSplit::symmetric(&ch, db_to_linear(14.5)).unwrap()).unwrap();
        assert!((sd - 10.2).abs() < 0.05, "{sd}");
    }

    #[test]
    fn private_only_is_treating_interference_as_noise() {
        let ch = GaussianChannel::new(1.0, 0.3, 0.2, 2.0, 1.0, 1.5, 50.0, 80.0).unwrap();
        let split = HkPowerSplit::new(0.0, 50.0, 0.0, 80.0).unwrap();
        let tin = (1.0 + 50.0 / (0.2 * 80.0 + 1.0f64)).log2() + (1.0 + 160.0 / (0.3 * 50.0 + 1.5f64)).log2();
        assert!((hk_region_sum(&ch, &split).unwrap() - tin).abs() < 1e-9);
        assert!((sd_two_message_sum(&ch, &split).unwrap() - tin).abs() < 1e-12);
    }

    #[test]
    fn no_cross_gain_is_interference_free() {
        let ch = GaussianChannel::new(1.5, 0.0, 0.0, 0.5, 1.0, 2.0, 10.0, 30.0).unwrap();
        let private = HkPowerSplit::new(0.0, 10.0, 0.0, 30.0).unwrap();
        let want = (1.0 + 15.0f64).log2() + (1.0 + 7.5f64).log2();
        assert!((hk_region_sum(&ch, &private).unwrap() - want).abs() < 1e-12);
        // A common message must also be decoded at the other receiver, where
        // it is invisible, so it carries nothing.
        let mixed = HkPowerSplit::new(4.0, 6.0, 10.0, 20.0).unwrap();
        let want = (1.0 + 9.0f64).log2() + (1.0 + 5.0f64).log2();
        assert!((hk_region_sum(&ch, &mixed).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn budget_checked() {
        let ch = example();
        assert!(hk_region_sum(&ch, &HkPowerSplit::new(900.0, 200.0, 0.0, 0.0).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn sd_inside_hk_and_paths_agree(
            g12 in 0.0f64..1.5, g21 in 0.0f64..1.5, g22 in 0.3f64..2.0,
            f1 in 0.0f64..=1.0, f2 in 0.0f64..=1.0, pexp in 0.0f64..4.0,
        ) {
            let p = 10f64.powf(pexp);
            let ch = GaussianChannel::new(1.0, g12, g21, g22, 1.0, 0.7, p, 2.0 * p).unwrap();
            let split = HkPowerSplit::new(p * (1.0 - f1), p * f1, 2.0 * p * (1.0 - f2), 2.0 * p * f2).unwrap();
            let sd = sd_two_message_sum(&ch, &split).unwrap();
            let hk = hk_region_sum(&ch, &split).unwrap();
            prop_assert!(sd <= hk + 1e-9, "sd {sd} hk {hk}");
            let via_rates = sd_rates(&ch, &split.to_sd_scheme()).unwrap().sum;
            prop_assert!((via_rates - sd).abs() <= 1e-9 * sd.max(1.0));
        }
    }
}
