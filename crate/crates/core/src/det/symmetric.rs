//! Symmetric channels: `n11 = n22 = 1`, `n12 = n21 = alpha`, `beta = 1 - alpha`.
//!
//! `[0, 1]` is cut into `k` segments of length `beta` followed by a residual
//! of length `1 - k*beta`, where `k` is the smallest integer with
//! `(k + 1) * beta >= 1`. The odd-indexed segments form group G1; activating
//! both users on G1 (and nothing else) is optimal. Even `k = 2n` gives
//! `R = 1 - n*beta`; odd `k = 2n + 1` gives `R = (n + 1)*beta`.

use super::{Interval, LevelScheme};
use crate::error::{domain, Error, Result};
use crate::level::Level;

/// Refuse to build absurdly fine segmentations (alpha extremely close to 1).
const MAX_SEGMENTS: usize = 1 << 20;

fn check_alpha<T: Level>(alpha: T) -> Result<()> {
    if alpha >= T::zero() && alpha <= T::one() {
        Ok(())
    } else {
        domain(format!("alpha must lie in [0, 1], got {alpha:?}"))
    }
}

/// Smallest `k >= 0` with `(k + 1) * beta >= 1`, for `beta > 0`.
fn full_segments<T: Level>(beta: T) -> Result<usize> {
    let one = T::one();
    let guess = (1.0 / beta.to_f64_lossy()).floor();
    if !guess.is_finite() || guess > MAX_SEGMENTS as f64 {
        return Err(Error::Unsupported(format!("beta = {beta:?} needs more than {MAX_SEGMENTS} segments")));
    }
    let mut k = (guess as usize).saturating_sub(1);
    let covers = |k: usize| T::le_tol(one, T::int(k as i64 + 1) * beta);
    while !covers(k) {
        k += 1;
    }
    while k > 0 && covers(k - 1) {
        k -= 1;
    }
    Ok(k)
}

/// Ordered segments of `[0, 1]` with their group membership.
#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation<T> {
    segments: Vec<Interval<T>>,
}

impl<T: Level> Segmentation<T> {
    pub fn segments(&self) -> &[Interval<T>] {
        &self.segments
    }

    /// Whether the 0-based segment `i` belongs to G1 (odd 1-based index).
    pub fn in_g1(&self, i: usize) -> bool {
        i % 2 == 0
    }

    pub fn g1(&self) -> Vec<Interval<T>> {
        self.segments.iter().step_by(2).copied().collect()
    }

    pub fn g2(&self) -> Vec<Interval<T>> {
        self.segments.iter().skip(1).step_by(2).copied().collect()
    }
}

/// Segmentation of `[0, 1]` for `alpha` in `[0, 1)`.
pub fn segmentation<T: Level>(alpha: T) -> Result<Segmentation<T>> {
    check_alpha(alpha)?;
    if alpha == T::one() {
        return Err(Error::Degenerate("alpha = 1 has zero shift and no segmentation".into()));
    }
    let beta = T::one() - alpha;
    let k = full_segments(beta)?;
    let mut segments = Vec::with_capacity(k + 1);
    for j in 0..k {
        let lo = T::int(j as i64) * beta;
        segments.push(Interval::new_unchecked(lo, lo + beta));
    }
    let last_lo = T::int(k as i64) * beta;
    if T::one() - last_lo > T::tol() {
        segments.push(Interval::new_unchecked(last_lo, T::one()));
    }
    Ok(Segmentation { segments })
}

/// Constrained symmetric capacity `R(alpha)` per user.
pub fn symmetric_capacity<T: Level>(alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    if alpha == T::one() {
        return Ok(T::one() / T::int(2));
    }
    let beta = T::one() - alpha;
    let k = full_segments(beta)?;
    let n = T::int((k / 2) as i64);
    Ok(if k % 2 == 0 { T::one() - n * beta } else { (n + T::one()) * beta })
}

/// The information-theoretic symmetric capacity envelope
/// `min(1, max(alpha, 1 - alpha), 1 - alpha / 2)`.
pub fn w_curve<T: Level>(alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    let one = T::one();
    let a = T::max_of(alpha, one - alpha);
    Ok(T::min_of(T::min_of(one, a), one - alpha / T::int(2)))
}

/// Returns `n` when `alpha = (2n - 1) / (2n)` for some `n >= 1`.
pub fn is_degenerate_point<T: Level>(alpha: T) -> Option<usize> {
    let beta = T::one() - alpha;
    if !(beta > T::zero()) || beta > T::one() / T::int(2) + T::tol() {
        return None;
    }
    let n = (0.5 / beta.to_f64_lossy()).round();
    if !(n >= 1.0) || n > MAX_SEGMENTS as f64 {
        return None;
    }
    let two_n = T::int(2 * n as i64);
    T::eq_tol(two_n * beta, T::one()).then_some(n as usize)
}

/// Both users active on G1. Defined for `0 < alpha < 1`.
pub fn optimal_symmetric_scheme<T: Level>(alpha: T) -> Result<LevelScheme<T>> {
    check_alpha(alpha)?;
    if alpha == T::zero() || alpha == T::one() {
        return Err(Error::Degenerate(format!(
            "alpha = {alpha:?}: use full activity (alpha = 0) or time sharing (alpha = 1)"
        )));
    }
    let g1 = segmentation(alpha)?.g1();
    LevelScheme::new(g1.clone(), g1)
}

/// Minimum number of messages per user needed to reach `R(alpha)`.
///
/// This is `n + 1` on the open intervals `((2n-1)/2n, (2n+1)/(2n+2))`, and 1
/// for `alpha <= 1/2`, at the points `(2n-1)/2n` (where time sharing two
/// single-message schemes already reaches `1/2`) and at `alpha = 1`.
pub fn min_message_count<T: Level>(alpha: T) -> Result<usize> {
    check_alpha(alpha)?;
    if alpha == T::one() || is_degenerate_point(alpha).is_some() {
        return Ok(1);
    }
    let k = full_segments(T::one() - alpha)?;
    Ok(k / 2 + 1)
}

/// Everything known about the symmetric optimum at one `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOptimum<T> {
    pub alpha: T,
    /// `R(alpha)` per user.
    pub rate: T,
    /// The G1 scheme, when one exists (`0 < alpha < 1`). At `alpha = 0`
    /// this is full activity for both users.
    pub scheme: Option<LevelScheme<T>>,
    /// Minimum messages per user needed for `R(alpha)`.
    pub min_messages: usize,
    /// True when the fewest-message optimum time-shares two single-user
    /// schemes instead of using a level scheme.
    pub time_sharing: bool,
}

pub fn symmetric_optimum<T: Level>(alpha: T) -> Result<SymmetricOptimum<T>> {
    let rate = symmetric_capacity(alpha)?;
    let min_messages = min_message_count(alpha)?;
    let scheme = if alpha == T::one() {
        None
    } else if alpha == T::zero() {
        let full = vec![Interval::new_unchecked(T::zero(), T::one())];
        Some(LevelScheme::new(full.clone(), full)?)
    } else {
        Some(optimal_symmetric_scheme(alpha)?)
    };
    let g1_messages = scheme.as_ref().map(|s| s.user1().len());
    let time_sharing = match g1_messages {
        None => true,
        Some(m) => m > min_messages,
    };
    Ok(SymmetricOptimum { alpha, rate, scheme, min_messages, time_sharing })
}

/// Maximum sum rate when user `i` may send at most `caps.i` messages.
pub fn limited_message_capacity<T: Level>(alpha: T, l1_max: usize, l2_max: usize) -> Result<T> {
    check_alpha(alpha)?;
    if l1_max < 1 || l2_max < 1 {
        return domain("message caps must be at least 1");
    }
    let need = min_message_count(alpha)?;
    if l1_max >= need && l2_max >= need {
        Ok(T::int(2) * symmetric_capacity(alpha)?)
    } else {
        Ok(T::one())
    }
}

/// Parameters `(-delta2, -delta1)` that impose the same complementarity
/// conditions as `(delta1, delta2)`.
pub fn equivalent_parameters<T: Level>(delta1: T, delta2: T) -> (T, T) {
    (-delta2, -delta1)
}
