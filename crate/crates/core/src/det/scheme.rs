use super::DeterministicChannel;
use crate::error::{Error, Result};
use crate::level::Level;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Closed interval `[lo, hi]` of levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Level> Interval<T> {
    /// Requires `lo <= hi` (up to the level tolerance).
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !T::le_tol(lo, hi) {
            return Err(Error::InvalidLevelScheme(format!("interval endpoints out of order: [{lo:?}, {hi:?}]")));
        }
        Ok(Self { lo, hi: T::max_of(lo, hi) })
    }

    pub(crate) fn new_unchecked(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn len(&self) -> T {
        self.hi - self.lo
    }

    /// True when the interval carries no measure.
    pub fn is_empty(&self) -> bool {
        self.len() <= T::tol()
    }

    pub fn shifted(&self, by: T) -> Self {
        Self { lo: self.lo + by, hi: self.hi + by }
    }

    /// Length of the intersection with `other` (zero when disjoint).
    pub fn overlap(&self, other: &Self) -> T {
        let lo = T::max_of(self.lo, other.lo);
        let hi = T::min_of(self.hi, other.hi);
        if hi > lo {
            hi - lo
        } else {
            T::zero()
        }
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        T::le_tol(self.lo, other.lo) && T::le_tol(other.hi, self.hi)
    }
}

/// Active level sets of both users.
///
/// Each user's intervals are kept sorted, pairwise disjoint and maximal:
/// touching intervals are merged, since adjacent active levels carry one
/// message.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelScheme<T> {
    user1: Vec<Interval<T>>,
    user2: Vec<Interval<T>>,
}

fn normalize<T: Level>(mut v: Vec<Interval<T>>) -> Result<Vec<Interval<T>>> {
    v.retain(|iv| !iv.is_empty());
    v.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("interval endpoints must be comparable"));
    let mut out: Vec<Interval<T>> = Vec::with_capacity(v.len());
    for iv in v {
        match out.last_mut() {
            Some(last) if T::le_tol(iv.lo, last.hi) => {
                if iv.lo < last.hi - T::tol() {
                    return Err(Error::InvalidLevelScheme(format!(
                        "intervals overlap: [{:?}, {:?}] and [{:?}, {:?}]",
                        last.lo, last.hi, iv.lo, iv.hi
                    )));
                }
                last.hi = T::max_of(last.hi, iv.hi);
            }
            _ => out.push(iv),
        }
    }
    Ok(out)
}

impl<T: Level> LevelScheme<T> {
    /// Sorts and merges each user's intervals. Overlapping intervals are
    /// rejected; zero-length ones are dropped.
    pub fn new(user1: Vec<Interval<T>>, user2: Vec<Interval<T>>) -> Result<Self> {
        Ok(Self { user1: normalize(user1)?, user2: normalize(user2)? })
    }

    /// Like [`LevelScheme::new`] but also checks that each user stays inside
    /// its level range on `ch`.
    pub fn for_channel(ch: &DeterministicChannel<T>, user1: Vec<Interval<T>>, user2: Vec<Interval<T>>) -> Result<Self> {
        let s = Self::new(user1, user2)?;
        s.check_ranges(ch)?;
        Ok(s)
    }

    /// Builds a scheme from `(lo, hi)` pairs.
    pub fn from_pairs(user1: &[(T, T)], user2: &[(T, T)]) -> Result<Self> {
        let conv = |v: &[(T, T)]| v.iter().map(|&(lo, hi)| Interval::new(lo, hi)).collect::<Result<Vec<_>>>();
        Self::new(conv(user1)?, conv(user2)?)
    }

    pub fn empty() -> Self {
        Self { user1: Vec::new(), user2: Vec::new() }
    }

    pub fn check_ranges(&self, ch: &DeterministicChannel<T>) -> Result<()> {
        for (name, ivs, range) in [("user 1", &self.user1, ch.i1()), ("user 2", &self.user2, ch.i2())] {
            if let Some(bad) = ivs.iter().find(|iv| !range.contains_interval(iv)) {
                return Err(Error::InvalidLevelScheme(format!(
                    "{name} interval [{:?}, {:?}] leaves its range [{:?}, {:?}]",
                    bad.lo, bad.hi, range.lo, range.hi
                )));
            }
        }
        Ok(())
    }

    pub fn user1(&self) -> &[Interval<T>] {
        &self.user1
    }

    pub fn user2(&self) -> &[Interval<T>] {
        &self.user2
    }

    /// Total active length of user 1.
    pub fn rate1(&self) -> T {
        self.user1.iter().fold(T::zero(), |acc, iv| acc + iv.len())
    }

    /// Total active length of user 2.
    pub fn rate2(&self) -> T {
        self.user2.iter().fold(T::zero(), |acc, iv| acc + iv.len())
    }

    pub fn sum_rate(&self) -> T {
        self.rate1() + self.rate2()
    }

    /// Applies `x -> scale * x + offset` to every endpoint.
    pub fn affine(&self, scale: T, offset: T) -> Result<Self> {
        let map = |v: &[Interval<T>]| {
            v.iter().map(|iv| Interval::new(iv.lo * scale + offset, iv.hi * scale + offset)).collect::<Result<Vec<_>>>()
        };
        Self::new(map(&self.user1)?, map(&self.user2)?)
    }

    /// Exchanges the two users' interval lists.
    pub fn swapped(&self) -> Self {
        Self { user1: self.user2.clone(), user2: self.user1.clone() }
    }

    /// Converts the endpoints to `f64`.
    pub fn to_f64(&self) -> LevelScheme<f64> {
        let conv = |v: &[Interval<T>]| {
            v.iter().map(|iv| Interval::new_unchecked(iv.lo.to_f64_lossy(), iv.hi.to_f64_lossy())).collect()
        };
        LevelScheme { user1: conv(&self.user1), user2: conv(&self.user2) }
    }
}

/// Number of maximal active intervals per user, i.e. the number of messages
/// each user sends.
pub fn message_count<T: Level>(s: &LevelScheme<T>) -> (usize, usize) {
    (s.user1.len(), s.user2.len())
}

/// Checks both complementarity conditions.
///
/// A violation is an overlap of measure greater than `tol` between an
/// active interval of one user and the shifted active set of the other.
/// Touching endpoints are allowed.
pub fn complementarity_ok<T: Level>(ch: &DeterministicChannel<T>, s: &LevelScheme<T>, tol: T) -> bool {
    let d1 = ch.delta1();
    let d2 = ch.delta2();
    for a in &s.user1 {
        for b in &s.user2 {
            // f1(x) f2(x + d1): x in a and x + d1 in b.
            if a.overlap(&b.shifted(-d1)) > tol {
                return false;
            }
            // f2(x) f1(x + d2): x in b and x + d2 in a.
            if b.overlap(&a.shifted(-d2)) > tol {
                return false;
            }
        }
    }
    true
}

#[derive(Serialize, Deserialize)]
struct SchemeRepr {
    user1: Vec<[f64; 2]>,
    user2: Vec<[f64; 2]>,
}

impl<T: Level> Serialize for LevelScheme<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let conv = |v: &[Interval<T>]| v.iter().map(|iv| [iv.lo.to_f64_lossy(), iv.hi.to_f64_lossy()]).collect();
        SchemeRepr { user1: conv(&self.user1), user2: conv(&self.user2) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LevelScheme<f64> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SchemeRepr::deserialize(deserializer)?;
        let pairs = |v: &[[f64; 2]]| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        LevelScheme::from_pairs(&pairs(&repr.user1), &pairs(&repr.user2)).map_err(serde::de::Error::custom)
    }
}
