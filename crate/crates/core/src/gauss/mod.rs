//! Gaussian interference channels under superposition coding.
//!
//! Each user splits its power over several messages; each receiver decodes
//! a chosen sequence of messages one at a time, removing each before the
//! next. Rates are in bits per channel use.

mod baseline;
mod channel;
mod hk;
pub mod lp;
mod scheme;

pub use baseline::{baseline_power_grid, single_message_baseline, single_message_sum, BaselineResult, DecodeConfig};
pub use channel::{db_to_linear, linear_to_db, GaussianChannel, User};
pub use hk::{hk_constraints, hk_region_sum, sd_two_message_sum, HkPowerSplit};
pub use scheme::{sd_rates, MessageId, SdRates, SdScheme};
