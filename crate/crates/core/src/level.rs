//! Numeric types usable as bit-level coordinates.
//!
//! Level schemes work on exact rationals when the channel gains are integers
//! (so branch boundaries such as alpha = 3/4 are hit exactly) and on `f64`
//! otherwise. Both implement [`Level`].

use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use std::fmt::Debug;

/// Exact rational level coordinate.
pub type Rational = Ratio<i64>;

/// A totally ordered field element used for level endpoints.
pub trait Level: Signed + PartialOrd + Copy + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Comparison slack: zero for exact types, `1e-12` for floats.
    fn tol() -> Self;

    fn int(v: i64) -> Self;

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `a <= b` up to [`Level::tol`].
    fn le_tol(a: Self, b: Self) -> bool {
        a <= b + Self::tol()
    }

    /// `a == b` up to [`Level::tol`].
    fn eq_tol(a: Self, b: Self) -> bool {
        (a - b).abs() <= Self::tol()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Level for f64 {
    fn tol() -> Self {
        1e-12
    }

    fn int(v: i64) -> Self {
        v as f64
    }
}

impl Level for Rational {
    fn tol() -> Self {
        Ratio::from_integer(0)
    }

    fn int(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

/// Builds the rational `num / den`.
pub fn rational(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}
