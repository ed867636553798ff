//! Parsing of exact level parameters and channel descriptions.

use crate::error::{usage, CliError};
use sdcap_core::gauss::GaussianChannel;
use sdcap_core::level::rational;
use sdcap_core::Rational;

/// Parses `"0.7"`, `".9"`, `"3"` or `"2/3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a decimal or fraction: {s:?}");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(rational(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    Ok(rational(if neg { -num } else { num }, den))
}

/// Channel description shared by the Gaussian subcommands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ChannelArgs {
    /// Direct SNR in dB; with `--alpha` gives g11 = g22 = 1, N = 1,
    /// budget = SNR and cross gain SNR^(alpha - 1).
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: Option<f64>,
    /// log(INR) / log(SNR), used with `--snr-db`.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Power gains: `direct,cross` (symmetric) or `g11,g12,g21,g22`, where
    /// g12 is transmitter 1 to receiver 2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub gains: Vec<f64>,
    /// Noise powers: one value for both receivers or `n1,n2`. Default 1.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub noise: Vec<f64>,
    /// Power budgets: one value for both users or `p1,p2`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub power: Vec<f64>,
}

fn pair(v: &[f64], what: &str, default: Option<f64>) -> Result<(f64, f64), CliError> {
    match (v, default) {
        ([], Some(d)) => Ok((d, d)),
        ([x], _) => Ok((*x, *x)),
        ([a, b], _) => Ok((*a, *b)),
        ([], None) => usage(format!("--{what} is required with --gains")),
        _ => usage(format!("--{what} takes one or two values")),
    }
}

impl ChannelArgs {
    fn is_empty(&self) -> bool {
        self.snr_db.is_none()
            && self.alpha.is_none()
            && self.gains.is_empty()
            && self.noise.is_empty()
            && self.power.is_empty()
    }

    /// Resolves to a channel, or `None` when nothing was given.
    pub fn resolve_opt(&self) -> Result<Option<GaussianChannel>, CliError> {
        if self.is_empty() {
            return Ok(None);
        }
        if let Some(snr) = self.snr_db {
            if !self.gains.is_empty() || !self.noise.is_empty() || !self.power.is_empty() {
                return usage("--snr-db/--alpha cannot be combined with --gains, --noise or --power");
            }
            let Some(alpha) = self.alpha else { return usage("--snr-db needs --alpha") };
            return Ok(Some(GaussianChannel::from_snr_alpha(snr, alpha)?));
        }
        if self.alpha.is_some() {
            return usage("--alpha needs --snr-db");
        }
        let (g11, g12, g21, g22) = match self.gains[..] {
            [d, c] => (d, c, c, d),
            [a, b, c, d] => (a, b, c, d),
            [] => return usage("give either --snr-db and --alpha, or --gains"),
            _ => return usage("--gains takes `direct,cross` or four values"),
        };
        let (n1, n2) = pair(&self.noise, "noise", Some(1.0))?;
        let (p1, p2) = pair(&self.power, "power", None)?;
        Ok(Some(GaussianChannel::new(g11, g12, g21, g22, n1, n2, p1, p2)?))
    }

    pub fn resolve(&self) -> Result<GaussianChannel, CliError> {
        match self.resolve_opt()? {
            Some(ch) => Ok(ch),
            None => usage("a channel is required: --snr-db and --alpha, or --gains and --power"),
        }
    }
}
