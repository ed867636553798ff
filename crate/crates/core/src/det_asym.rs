//! Asymmetric deterministic channels.
//!
//! Any channel is first put in canonical form: users are relabeled so the
//! stronger direct link is user 1, levels are scaled so `n11 = 1`, and the
//! shift pair `(delta1, delta2)` is replaced by `(-delta2, -delta1)` when
//! that lands in one of the three handled sign patterns. The replacement
//! imposes identical complementarity conditions, so schemes carry over
//! unchanged; it only changes the *virtual* cross gains
//! `n21 = 1 - delta1` and `n12 = n22 - delta2` used for classification.

use crate::det::{message_count, DeterministicChannel, Interval, LevelScheme};
use crate::error::{domain, Error, Result};
use crate::level::Level;
use serde::Serialize;

const MAX_SEGMENTS: usize = 1 << 20;

/// The six parameter regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AsymCaseTag {
    /// `delta1, delta2 >= 0`, `n22 >= n21`: alternating segments for both users.
    A1,
    /// `delta1, delta2 >= 0`, `n21 > n22`: user 1 alone.
    A2,
    /// `delta1 >= 0 > delta2`, `n22 >= n21`, `n12 > 1`: user 1 full, user 2 on its lowest `n12 - 1` levels.
    B1,
    /// `delta1 >= 0 > delta2`, `n22 >= n21`, `n12 <= 1`: user 1 alone.
    B2,
    /// `delta1 >= 0 > delta2`, `n22 < n21`: user 1 alone.
    B3,
    /// `delta1 < 0 <= delta2`: user 1 on its top `n21 - n22` levels, user 2 full.
    C,
}

/// Classification result with the segment lengths of the regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymCase<T> {
    pub tag: AsymCaseTag,
    pub beta1: Option<T>,
    pub beta2: Option<T>,
}

/// A channel in canonical form (`n11 = 1 >= n22`, handled sign pattern).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalChannel<T> {
    original: DeterministicChannel<T>,
    swapped: bool,
    reflected: bool,
    n22: T,
    delta1: T,
    delta2: T,
}

impl<T: Level> CanonicalChannel<T> {
    pub fn n22(&self) -> T {
        self.n22
    }

    pub fn delta1(&self) -> T {
        self.delta1
    }

    pub fn delta2(&self) -> T {
        self.delta2
    }

    /// Virtual cross gain `1 - delta1` (may be negative after reflection).
    pub fn n21(&self) -> T {
        T::one() - self.delta1
    }

    /// Virtual cross gain `n22 - delta2`.
    pub fn n12(&self) -> T {
        self.n22 - self.delta2
    }

    /// True when the users were relabeled so that user 1 is the stronger one.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// True when the shift pair was replaced by its equivalent.
    pub fn reflected(&self) -> bool {
        self.reflected
    }

    /// Original level units per canonical unit.
    pub fn scale(&self) -> T {
        T::max_of(self.original.n11(), self.original.n22())
    }

    pub fn original(&self) -> &DeterministicChannel<T> {
        &self.original
    }

    /// Maps a canonical-coordinate scheme back to the original channel.
    fn to_original(self, s: &LevelScheme<T>) -> Result<LevelScheme<T>> {
        if self.swapped {
            let offset = self.original.n11() - self.original.n22();
            Ok(s.affine(self.scale(), offset)?.swapped())
        } else {
            s.affine(self.scale(), T::zero())
        }
    }
}

/// Puts `ch` in canonical form.
pub fn canonicalize<T: Level>(ch: &DeterministicChannel<T>) -> Result<CanonicalChannel<T>> {
    let swapped = ch.n11() < ch.n22();
    let work = if swapped { ch.swapped()? } else { *ch };
    let norm = work.normalized();
    let (mut d1, mut d2) = (norm.delta1(), norm.delta2());
    let zero = T::zero();
    let reflect = match (d1 >= zero, d2 >= zero) {
        (false, false) => true,
        (true, false) => d1.abs() < d2.abs(),
        (false, true) => d1.abs() > d2.abs(),
        (true, true) => false,
    };
    if reflect {
        (d1, d2) = crate::det::equivalent_parameters(d1, d2);
    }
    Ok(CanonicalChannel { original: *ch, swapped, reflected: reflect, n22: norm.n22(), delta1: d1, delta2: d2 })
}

/// Classifies a canonical channel.
pub fn classify_canonical<T: Level>(c: &CanonicalChannel<T>) -> AsymCase<T> {
    let zero = T::zero();
    let one = T::one();
    let (n12, n21, n22) = (c.n12(), c.n21(), c.n22);
    let case = |tag, beta1, beta2| AsymCase { tag, beta1, beta2 };
    if c.delta1 >= zero && c.delta2 >= zero {
        if n22 >= n21 {
            case(AsymCaseTag::A1, Some(one - n12), Some(n22 - n21))
        } else {
            case(AsymCaseTag::A2, Some(one - n12 - (n21 - n22)), None)
        }
    } else if c.delta1 >= zero {
        if n22 < n21 {
            case(AsymCaseTag::B3, Some(one - n12 - (n21 - n22)), None)
        } else if n12 > one {
            case(AsymCaseTag::B1, Some(n22 - n21 - (n12 - one)), None)
        } else {
            case(AsymCaseTag::B2, Some(one - n12), Some(n22 - n21))
        }
    } else {
        case(AsymCaseTag::C, Some(one - n12 - (n21 - n22)), None)
    }
}

/// Canonicalizes and classifies `ch`.
pub fn classify<T: Level>(ch: &DeterministicChannel<T>) -> Result<AsymCase<T>> {
    Ok(classify_canonical(&canonicalize(ch)?))
}

/// Odd-indexed pieces of `[start, end]` cut into alternating lengths
/// `first, second, first, ...`; the last piece is truncated at `end`.
fn alternating<T: Level>(start: T, end: T, first: T, second: T) -> Result<Vec<Interval<T>>> {
    let mut out = Vec::new();
    let mut x = start;
    let mut odd = true;
    let mut pieces = 0usize;
    while end - x > T::tol() {
        let len = if odd { first } else { second };
        let hi = T::min_of(x + len, end);
        if odd && hi - x > T::tol() {
            out.push(Interval::new(x, hi)?);
        }
        x = hi;
        odd = !odd;
        pieces += 1;
        if pieces > MAX_SEGMENTS {
            return Err(Error::Unsupported("segment lengths too small to enumerate".into()));
        }
    }
    Ok(out)
}

/// Optimal scheme and sum rate in canonical coordinates (`I1 = [0, 1]`,
/// `I2 = [1 - n22, 1]`).
pub fn canonical_scheme<T: Level>(c: &CanonicalChannel<T>) -> Result<(LevelScheme<T>, T)> {
    let one = T::one();
    let zero = T::zero();
    let d = one - c.n22;
    let full1 = || vec![Interval::new_unchecked(zero, one)];
    let full2 = || vec![Interval::new_unchecked(d, one)];
    let class = classify_canonical(c);
    let scheme = match class.tag {
        AsymCaseTag::A1 => {
            let b1 = class.beta1.expect("A1 has beta1");
            let b2 = class.beta2.expect("A1 has beta2");
            if b1 + b2 <= T::tol() {
                LevelScheme::new(full1(), Vec::new())?
            } else {
                LevelScheme::new(alternating(zero, one, b1, b2)?, alternating(d, one, b2, b1)?)?
            }
        }
        AsymCaseTag::A2 | AsymCaseTag::B2 | AsymCaseTag::B3 => LevelScheme::new(full1(), Vec::new())?,
        AsymCaseTag::B1 => {
            let top = d + c.n12() - one;
            LevelScheme::new(full1(), vec![Interval::new(d, top)?])?
        }
        AsymCaseTag::C => {
            let top = c.n21() - c.n22;
            LevelScheme::new(vec![Interval::new(zero, top)?], full2())?
        }
    };
    let sum = scheme.sum_rate();
    Ok((scheme, sum))
}

/// Optimal scheme on `ch` (original coordinates) and its sum rate in
/// original level units.
pub fn optimal_asym_scheme<T: Level>(ch: &DeterministicChannel<T>) -> Result<(LevelScheme<T>, T)> {
    let c = canonicalize(ch)?;
    let (s, sum) = canonical_scheme(&c)?;
    Ok((c.to_original(&s)?, sum * c.scale()))
}

/// Maximum sum rate with at most `l1_max` / `l2_max` messages for users 1
/// and 2 of `ch`, in original level units.
///
/// Only regime A1 ever needs more than one message per user. There, falling
/// short of the optimal scheme's count for either user drops the sum rate to
/// the stronger user's direct gain.
pub fn limited_message_capacity_asym<T: Level>(
    ch: &DeterministicChannel<T>,
    l1_max: usize,
    l2_max: usize,
) -> Result<T> {
    if l1_max < 1 || l2_max < 1 {
        return domain("message caps must be at least 1");
    }
    let c = canonicalize(ch)?;
    let (s, sum) = canonical_scheme(&c)?;
    let (n1, n2) = message_count(&s);
    let (cap1, cap2) = if c.swapped { (l2_max, l1_max) } else { (l1_max, l2_max) };
    let value = if cap1 >= n1 && cap2 >= n2 { sum } else { T::min_of(sum, T::one()) };
    Ok(value * c.scale())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{complementarity_ok, optimal_symmetric_scheme, symmetric_capacity};
    use crate::level::{rational, Rational};
    use proptest::prelude::*;

    fn ch(n11: f64, n22: f64, n12: f64, n21: f64) -> DeterministicChannel<f64> {
        DeterministicChannel::new(n11, n22, n12, n21).unwrap()
    }

    fn close(a: Option<f64>, b: f64) -> bool {
        a.is_some_and(|a| (a - b).abs() < 1e-12)
    }

    #[test]
    fn classify_examples() {
        let a1 = classify(&ch(1.0, 0.8, 0.6, 0.5)).unwrap();
        assert_eq!(a1.tag, AsymCaseTag::A1);
        assert!(close(a1.beta1, 0.4) && close(a1.beta2, 0.3));

        let a2 = classify(&ch(1.0, 0.5, 0.4, 0.7)).unwrap();
        assert_eq!(a2.tag, AsymCaseTag::A2);
        assert!(close(a2.beta1, 0.4));

        let sym = classify(&ch(1.0, 1.0, 0.7, 0.7)).unwrap();
        assert_eq!(sym.tag, AsymCaseTag::A1);
        assert!(close(sym.beta1, 0.3) && close(sym.beta2, 0.3));

        assert_eq!(classify(&ch(1.0, 0.9, 0.6, 1.3)).unwrap().tag, AsymCaseTag::C);
    }

    #[test]
    fn a1_example_scheme() {
        let c = ch(1.0, 0.8, 0.6, 0.5);
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        assert!((sum - 1.1).abs() < 1e-12);
        assert!(complementarity_ok(&c, &s, 1e-12));
        assert_eq!(message_count(&s), (2, 2));
    }

    #[test]
    fn a2_example_scheme() {
        let c = ch(1.0, 0.5, 0.4, 0.7);
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        assert_eq!(sum, 1.0);
        assert_eq!(s, LevelScheme::from_pairs(&[(0.0, 1.0)], &[]).unwrap());
    }

    #[test]
    fn c_example_scheme() {
        let c = ch(1.0, 0.9, 0.6, 1.3);
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        assert!((sum - 1.3).abs() < 1e-12);
        let u1 = s.user1();
        assert_eq!(u1.len(), 1);
        assert!((u1[0].lo()).abs() < 1e-12 && (u1[0].hi() - 0.4).abs() < 1e-12);
        let u2 = s.user2();
        assert!((u2[0].lo() - 0.1).abs() < 1e-12 && (u2[0].hi() - 1.0).abs() < 1e-12);
        assert!(complementarity_ok(&c, &s, 1e-12));
    }

    #[test]
    fn b_cases() {
        // delta1 = 0.3, delta2 = -0.2, n12 = 1.1 > 1.
        let b1 = ch(1.0, 0.9, 1.1, 0.7);
        assert_eq!(classify(&b1).unwrap().tag, AsymCaseTag::B1);
        let (s, sum) = optimal_asym_scheme(&b1).unwrap();
        assert!((sum - 1.1).abs() < 1e-12);
        assert!(complementarity_ok(&b1, &s, 1e-12));

        let b2 = ch(1.0, 0.6, 0.7, 0.5);
        assert_eq!(classify(&b2).unwrap().tag, AsymCaseTag::B2);
        assert_eq!(optimal_asym_scheme(&b2).unwrap().1, 1.0);

        let b3 = ch(1.0, 0.3, 0.4, 0.6);
        assert_eq!(classify(&b3).unwrap().tag, AsymCaseTag::B3);
        assert_eq!(optimal_asym_scheme(&b3).unwrap().1, 1.0);
    }

    #[test]
    fn both_negative_shifts_reflect() {
        // delta1 = -0.5, delta2 = -0.4 reflects to (0.4, 0.5).
        let c = ch(1.0, 0.6, 1.0, 1.5);
        let canon = canonicalize(&c).unwrap();
        assert!(canon.reflected());
        assert!((canon.delta1() - 0.4).abs() < 1e-12);
        let (s, _) = optimal_asym_scheme(&c).unwrap();
        assert!(complementarity_ok(&c, &s, 1e-12));
    }

    #[test]
    fn weaker_first_user_is_swapped_back() {
        let c = ch(0.8, 1.0, 0.5, 0.6);
        let canon = canonicalize(&c).unwrap();
        assert!(canon.swapped());
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        s.check_ranges(&c).unwrap();
        assert!(complementarity_ok(&c, &s, 1e-12));
        let (s2, sum2) = optimal_asym_scheme(&c.swapped().unwrap()).unwrap();
        assert!((sum - sum2).abs() < 1e-12);
        assert!((s.rate1() - s2.rate2()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_reduction_matches_symmetric_module() {
        let a = rational(7, 10);
        let c = DeterministicChannel::<Rational>::symmetric(a).unwrap();
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        assert_eq!(s, optimal_symmetric_scheme(a).unwrap());
        assert_eq!(sum, rational(2, 1) * symmetric_capacity(a).unwrap());
        assert_eq!(limited_message_capacity_asym(&c, 2, 2).unwrap(), rational(6, 5));
        assert_eq!(limited_message_capacity_asym(&c, 1, 2).unwrap(), rational(1, 1));
    }

    #[test]
    fn single_message_regimes_ignore_caps() {
        let c = ch(1.0, 0.9, 0.6, 1.3);
        assert!((limited_message_capacity_asym(&c, 1, 1).unwrap() - 1.3).abs() < 1e-12);
        let b1 = ch(1.0, 0.9, 1.1, 0.7);
        assert!((limited_message_capacity_asym(&b1, 1, 1).unwrap() - 1.1).abs() < 1e-12);
    }

    #[test]
    fn caps_follow_user_labels_after_swap() {
        // A1 after swapping: needs two messages for each user.
        let c = ch(0.8, 1.0, 0.5, 0.6);
        let (s, sum) = optimal_asym_scheme(&c).unwrap();
        let (m1, m2) = message_count(&s);
        assert!(limited_message_capacity_asym(&c, m1, m2).unwrap() == sum);
        if m1 > 1 {
            assert_eq!(limited_message_capacity_asym(&c, m1 - 1, m2).unwrap(), 1.0);
        }
    }

    proptest! {
        #[test]
        fn every_scheme_is_valid(n11 in 0.2f64..2.0, n22 in 0.2f64..2.0, n12 in 0.0f64..3.0, n21 in 0.0f64..3.0) {
            let c = ch(n11, n22, n12, n21);
            let (s, sum) = optimal_asym_scheme(&c).unwrap();
            s.check_ranges(&c).unwrap();
            prop_assert!(complementarity_ok(&c, &s, 1e-9));
            prop_assert!((s.sum_rate() - sum).abs() < 1e-9);
            // Never worse than the stronger user alone.
            prop_assert!(sum >= n11.max(n22) - 1e-9);
        }

        #[test]
        fn swap_invariance(n11 in 0.2f64..2.0, n22 in 0.2f64..2.0, n12 in 0.0f64..3.0, n21 in 0.0f64..3.0) {
            let c = ch(n11, n22, n12, n21);
            let a = optimal_asym_scheme(&c).unwrap().1;
            let b = optimal_asym_scheme(&c.swapped().unwrap()).unwrap().1;
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
