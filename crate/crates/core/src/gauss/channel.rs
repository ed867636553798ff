use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Converts decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// One of the two users (transmitter `i` talks to receiver `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum User {
    One,
    Two,
}

impl User {
    pub const BOTH: [User; 2] = [User::One, User::Two];

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    /// 0 for user 1, 1 for user 2.
    pub fn idx(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }

    pub fn from_number(n: u8) -> Option<User> {
        match n {
            1 => Some(User::One),
            2 => Some(User::Two),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        self.idx() as u8 + 1
    }
}

/// Two-user Gaussian interference channel.
///
/// `g_ij` is the power gain from transmitter `i` to receiver `j`; `n_i` is
/// the noise power at receiver `i` and `p_i` the power budget of user `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel")]
pub struct GaussianChannel {
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
    n1: f64,
    n2: f64,
    p1: f64,
    p2: f64,
}

#[derive(Deserialize)]
struct RawChannel {
    g11: f64,
    g12: f64,
    g21: f64,
    g22: f64,
    n1: f64,
    n2: f64,
    p1: f64,
    p2: f64,
}

impl TryFrom<RawChannel> for GaussianChannel {
    type Error = crate::Error;

    fn try_from(r: RawChannel) -> Result<Self> {
        GaussianChannel::new(r.g11, r.g12, r.g21, r.g22, r.n1, r.n2, r.p1, r.p2)
    }
}

impl GaussianChannel {
    /// Direct gains, noise powers and budgets must be positive; cross gains
    /// nonnegative.
    #[allow(clippy::too_many_arguments)]
    pub fn new(g11: f64, g12: f64, g21: f64, g22: f64, n1: f64, n2: f64, p1: f64, p2: f64) -> Result<Self> {
        for (name, v) in [("g11", g11), ("g22", g22), ("n1", n1), ("n2", n2), ("p1", p1), ("p2", p2)] {
            if !(v.is_finite() && v > 0.0) {
                return domain(format!("{name} must be positive and finite, got {v}"));
            }
        }
        for (name, v) in [("g12", g12), ("g21", g21)] {
            if !(v.is_finite() && v >= 0.0) {
                return domain(format!("{name} must be nonnegative and finite, got {v}"));
            }
        }
        Ok(Self { g11, g12, g21, g22, n1, n2, p1, p2 })
    }

    /// Symmetric channel with the given direct gain, cross gain, noise and budget.
    pub fn symmetric(direct: f64, cross: f64, noise: f64, budget: f64) -> Result<Self> {
        Self::new(direct, cross, cross, direct, noise, noise, budget, budget)
    }

    /// Symmetric channel with `g11 = 1`, `N = 1`, `p = SNR` and
    /// `g12 = SNR^(alpha - 1)`, so that `INR = SNR^alpha`.
    pub fn from_snr_alpha(snr_db: f64, alpha: f64) -> Result<Self> {
        if !snr_db.is_finite() || !alpha.is_finite() {
            return domain("SNR and alpha must be finite");
        }
        let snr = db_to_linear(snr_db);
        Self::symmetric(1.0, snr.powf(alpha - 1.0), 1.0, snr)
    }

    /// Gain from transmitter `tx` to receiver `rx`.
    pub fn gain(&self, tx: User, rx: User) -> f64 {
        match (tx, rx) {
            (User::One, User::One) => self.g11,
            (User::One, User::Two) => self.g12,
            (User::Two, User::One) => self.g21,
            (User::Two, User::Two) => self.g22,
        }
    }

    pub fn noise(&self, rx: User) -> f64 {
        match rx {
            User::One => self.n1,
            User::Two => self.n2,
        }
    }

    pub fn budget(&self, user: User) -> f64 {
        match user {
            User::One => self.p1,
            User::Two => self.p2,
        }
    }

    pub fn g11(&self) -> f64 {
        self.g11
    }

    pub fn g12(&self) -> f64 {
        self.g12
    }

    pub fn g21(&self) -> f64 {
        self.g21
    }

    pub fn g22(&self) -> f64 {
        self.g22
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n2
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// `g_ii * p_i / N_i`.
    pub fn snr(&self, user: User) -> f64 {
        self.gain(user, user) * self.budget(user) / self.noise(user)
    }

    /// Interference-to-noise ratio at receiver `rx`: `g_ji * p_j / N_i`.
    pub fn inr(&self, rx: User) -> f64 {
        let tx = rx.other();
        self.gain(tx, rx) * self.budget(tx) / self.noise(rx)
    }

    /// `log INR / log SNR` seen by receiver 1.
    pub fn alpha(&self) -> f64 {
        self.inr(User::One).ln() / self.snr(User::One).ln()
    }

    /// True when both users see identical parameters (relative slack 1e-12).
    pub fn is_symmetric(&self) -> bool {
        let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
        same(self.g11, self.g22) && same(self.g12, self.g21) && same(self.n1, self.n2) && same(self.p1, self.p2)
    }

    /// The same channel with the user labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            g11: self.g22,
            g12: self.g21,
            g21: self.g12,
            g22: self.g11,
            n1: self.n2,
            n2: self.n1,
            p1: self.p2,
            p2: self.p1,
        }
    }

    /// Equivalent channel with unit direct gains: receiver `i`'s noise and
    /// incoming cross gain are divided by `g_ii`. Rates are unchanged.
    pub fn unit_direct(&self) -> Self {
        Self {
            g11: 1.0,
            g22: 1.0,
            g21: self.g21 / self.g11,
            g12: self.g12 / self.g22,
            n1: self.n1 / self.g11,
            n2: self.n2 / self.g22,
            p1: self.p1,
            p2: self.p2,
        }
    }
}
