use super::{GaussianChannel, User};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Message `index` (0-based) of `user`. Serialized as `[user, index]` with
/// both numbers 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct MessageId {
    pub user: User,
    pub index: usize,
}

impl MessageId {
    pub fn new(user: User, index: usize) -> Self {
        Self { user, index }
    }
}

impl TryFrom<[usize; 2]> for MessageId {
    type Error = String;

    fn try_from(v: [usize; 2]) -> std::result::Result<Self, String> {
        let user = u8::try_from(v[0]).ok().and_then(User::from_number).ok_or_else(|| format!("bad user {}", v[0]))?;
        if v[1] == 0 {
            return Err("message indices start at 1".into());
        }
        Ok(Self { user, index: v[1] - 1 })
    }
}

impl From<MessageId> for [usize; 2] {
    fn from(m: MessageId) -> Self {
        [m.user.number() as usize, m.index + 1]
    }
}

/// Superposition powers for each user plus one decoding order per receiver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdScheme {
    pub powers_user1: Vec<f64>,
    pub powers_user2: Vec<f64>,
    pub order_rx1: Vec<MessageId>,
    pub order_rx2: Vec<MessageId>,
}

impl SdScheme {
    pub fn powers(&self, user: User) -> &[f64] {
        match user {
            User::One => &self.powers_user1,
            User::Two => &self.powers_user2,
        }
    }

    pub fn order(&self, rx: User) -> &[MessageId] {
        match rx {
            User::One => &self.order_rx1,
            User::Two => &self.order_rx2,
        }
    }

    pub fn power(&self, m: MessageId) -> f64 {
        self.powers(m.user)[m.index]
    }

    /// Checks budgets and order structure against `ch`.
    pub fn validate(&self, ch: &GaussianChannel) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScheme(msg));
        for user in User::BOTH {
            let p = self.powers(user);
            if p.is_empty() {
                return bad(format!("user {} has no messages", user.number()));
            }
            if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return bad(format!("user {} has invalid power {x}", user.number()));
            }
            let total: f64 = p.iter().sum();
            let budget = ch.budget(user);
            if total > budget * (1.0 + 1e-9) {
                return bad(format!("user {} spends {total} over budget {budget}", user.number()));
            }
        }
        for rx in User::BOTH {
            let order = self.order(rx);
            let mut seen = [vec![false; self.powers_user1.len()], vec![false; self.powers_user2.len()]];
            for m in order {
                let slot = seen[m.user.idx()].get_mut(m.index);
                match slot {
                    None => return bad(format!("receiver {} decodes unknown message {m:?}", rx.number())),
                    Some(true) => return bad(format!("receiver {} decodes {m:?} twice", rx.number())),
                    Some(s) => *s = true,
                }
            }
            if let Some(i) = seen[rx.idx()].iter().position(|s| !s) {
                return bad(format!("receiver {} never decodes its own message {}", rx.number(), i + 1));
            }
        }
        Ok(())
    }

    /// Copy with foreign messages after the last own message removed from
    /// each order; those are effectively treated as noise.
    pub fn normalized(&self) -> Self {
        let trim = |order: &[MessageId], rx: User| {
            let end = order.iter().rposition(|m| m.user == rx).map_or(0, |i| i + 1);
            order[..end].to_vec()
        };
        Self {
            powers_user1: self.powers_user1.clone(),
            powers_user2: self.powers_user2.clone(),
            order_rx1: trim(&self.order_rx1, User::One),
            order_rx2: trim(&self.order_rx2, User::Two),
        }
    }
}

/// Per-message rates of a successive-decoding scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SdRates {
    /// Achievable rate of each message, bits per channel use.
    pub rates_user1: Vec<f64>,
    pub rates_user2: Vec<f64>,
    /// Decodability bound of each message at receivers 1 and 2 (`None`
    /// where that receiver does not decode it).
    pub bounds_user1: Vec<[Option<f64>; 2]>,
    pub bounds_user2: Vec<[Option<f64>; 2]>,
    pub sum: f64,
}

impl SdRates {
    pub fn rates(&self, user: User) -> &[f64] {
        match user {
            User::One => &self.rates_user1,
            User::Two => &self.rates_user2,
        }
    }

    pub fn bounds(&self, m: MessageId) -> [Option<f64>; 2] {
        match m.user {
            User::One => self.bounds_user1[m.index],
            User::Two => self.bounds_user2[m.index],
        }
    }

    pub fn user_sum(&self, user: User) -> f64 {
        self.rates(user).iter().sum()
    }
}

/// Rates of every message under successive decoding.
///
/// At receiver `i`, the message in position `q` of the (normalized) order
/// sees as noise everything decoded after it plus every message receiver
/// `i` never decodes. Its rate is the minimum of this bound over the
/// receivers that decode it.
pub fn sd_rates(ch: &GaussianChannel, s: &SdScheme) -> Result<SdRates> {
    s.validate(ch)?;
    let s = s.normalized();
    let mut bounds = [vec![[None; 2]; s.powers_user1.len()], vec![[None; 2]; s.powers_user2.len()]];
    for rx in User::BOTH {
        let order = s.order(rx);
        let received = |m: MessageId| s.power(m) * ch.gain(m.user, rx);
        let mut decoded = [vec![false; s.powers_user1.len()], vec![false; s.powers_user2.len()]];
        for m in order {
            decoded[m.user.idx()][m.index] = true;
        }
        let mut floor = ch.noise(rx);
        for user in User::BOTH {
            for (i, &p) in s.powers(user).iter().enumerate() {
                if !decoded[user.idx()][i] {
                    floor += p * ch.gain(user, rx);
                }
            }
        }
        // Walk the order backwards so each message sees the accumulated
        // power of the ones decoded after it.
        let mut later = 0.0;
        for &m in order.iter().rev() {
            let signal = received(m);
            let bound = (1.0 + signal / (later + floor)).log2();
            bounds[m.user.idx()][m.index][rx.idx()] = Some(bound);
            later += signal;
        }
    }
    let rates = |b: &[[Option<f64>; 2]]| {
        b.iter().map(|pair| pair.iter().flatten().fold(f64::INFINITY, |a, &x| a.min(x))).collect::<Vec<f64>>()
    };
    let rates_user1 = rates(&bounds[0]);
    let rates_user2 = rates(&bounds[1]);
    let sum = rates_user1.iter().chain(&rates_user2).sum();
    let [bounds_user1, bounds_user2] = bounds;
    Ok(SdRates { rates_user1, rates_user2, bounds_user1, bounds_user2, sum })
}
