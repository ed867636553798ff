//! Deterministic (bit-level) interference channel model.
//!
//! Signals are viewed as stacks of levels on a continuous axis. User 1's
//! levels occupy `I1 = [0, n11]` and user 2's occupy `I2 = [n11 - n22, n11]`;
//! the noise floor sits at `n11` for both. A scheme switches each level on or
//! off, and successive decoding forces the two complementarity conditions
//!
//! ```text
//! f1(x) * f2(x + delta1) = 0      f2(x) * f1(x + delta2) = 0
//! ```
//!
//! with `delta1 = n11 - n21` and `delta2 = n22 - n12`.

mod scheme;
mod symmetric;

pub use scheme::{complementarity_ok, message_count, Interval, LevelScheme};
pub use symmetric::{
    equivalent_parameters, is_degenerate_point, limited_message_capacity, min_message_count, optimal_symmetric_scheme,
    segmentation, symmetric_capacity, symmetric_optimum, w_curve, Segmentation, SymmetricOptimum,
};

use crate::error::{domain, Result};
use crate::level::Level;
use serde::{Serialize, Serializer};

/// Four bit-level gains of a two-user deterministic channel.
///
/// `n_ij` is the number of levels of transmitter `i` seen at receiver `j`,
/// so `n21` is user 2's interference at receiver 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterministicChannel<T> {
    n11: T,
    n22: T,
    n12: T,
    n21: T,
}

impl<T: Level> DeterministicChannel<T> {
    /// All gains must be nonnegative and `n11` positive.
    pub fn new(n11: T, n22: T, n12: T, n21: T) -> Result<Self> {
        let zero = T::zero();
        if !(n11 > zero) {
            return domain(format!("n11 must be positive, got {n11:?}"));
        }
        for (name, v) in [("n22", n22), ("n12", n12), ("n21", n21)] {
            if !(v >= zero) {
                return domain(format!("{name} must be nonnegative, got {v:?}"));
            }
        }
        Ok(Self { n11, n22, n12, n21 })
    }

    /// Symmetric channel with unit direct gains and cross gains `alpha`.
    pub fn symmetric(alpha: T) -> Result<Self> {
        Self::new(T::one(), T::one(), alpha, alpha)
    }

    pub fn n11(&self) -> T {
        self.n11
    }

    pub fn n22(&self) -> T {
        self.n22
    }

    pub fn n12(&self) -> T {
        self.n12
    }

    pub fn n21(&self) -> T {
        self.n21
    }

    /// `n11 - n21`.
    pub fn delta1(&self) -> T {
        self.n11 - self.n21
    }

    /// `n22 - n12`.
    pub fn delta2(&self) -> T {
        self.n22 - self.n12
    }

    /// User 1's level range `[0, n11]`.
    pub fn i1(&self) -> Interval<T> {
        Interval::new_unchecked(T::zero(), self.n11)
    }

    /// User 2's level range `[n11 - n22, n11]`.
    pub fn i2(&self) -> Interval<T> {
        Interval::new_unchecked(self.n11 - self.n22, self.n11)
    }

    pub fn is_symmetric(&self) -> bool {
        T::eq_tol(self.n11, self.n22) && T::eq_tol(self.n12, self.n21)
    }

    /// All gains divided by `n11`.
    pub fn normalized(&self) -> Self {
        let s = self.n11;
        Self { n11: T::one(), n22: self.n22 / s, n12: self.n12 / s, n21: self.n21 / s }
    }

    /// The same channel with the user labels exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::new(self.n22, self.n11, self.n21, self.n12)
    }
}

impl<T: Level> Serialize for DeterministicChannel<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DeterministicChannel", 6)?;
        st.serialize_field("n11", &self.n11.to_f64_lossy())?;
        st.serialize_field("n22", &self.n22.to_f64_lossy())?;
        st.serialize_field("n12", &self.n12.to_f64_lossy())?;
        st.serialize_field("n21", &self.n21.to_f64_lossy())?;
        st.serialize_field("delta1", &self.delta1().to_f64_lossy())?;
        st.serialize_field("delta2", &self.delta2().to_f64_lossy())?;
        st.end()
    }
}
