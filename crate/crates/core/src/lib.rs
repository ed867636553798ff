//! Sum-capacity of two-user interference channels when receivers use
//! successive decoding of Gaussian superposition codewords.
//!
//! - [`det`] and [`det_asym`]: closed-form optimal level schemes in the
//!   deterministic model.
//! - [`gauss`]: Gaussian channels, successive-decoding rates, the two-message
//!   Han-Kobayashi region and the single-message baseline.
//! - [`translate`]: turning deterministic schemes into Gaussian power
//!   allocations.
//! - [`bounds`]: two Han-Kobayashi sum-rate upper bounds.
//! - [`oracle`]: brute-force checkers for all of the above.
//! - [`sweep`]: parameter sweeps producing figure-style data rows.

// `!(x > 0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod det;
pub mod det_asym;
pub mod error;
pub mod gauss;
pub mod level;
pub mod oracle;
pub mod sweep;
pub mod translate;

pub use det::{DeterministicChannel, Interval, LevelScheme};
pub use error::{Error, Result};
pub use level::{Level, Rational};
