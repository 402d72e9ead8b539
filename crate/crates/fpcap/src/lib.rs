//! Batch scans, CSV/JSON reports and the `fpcap` command line, built on
//! [`fpcap_core`].
//!
//! ```
//! use fpcap::channel_spec::ChannelSpec;
//!
//! let spec: ChannelSpec = "thresholdgap:l=1,u=3,gap=int".parse().unwrap();
//! let channel = spec.build(4).unwrap();
//! assert_eq!(channel.coalition_size(), 4);
//! ```

#![forbid(unsafe_code)]

pub mod channel_spec;
pub mod cli;
pub mod report;
pub mod scan;

pub use fpcap_core;

use std::io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] fpcap_core::Error),
    #[error(transparent)]
    Spec(#[from] channel_spec::SpecError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Format(String),
}

/// `x` to `digits` significant digits. Plain decimal for moderate magnitudes,
/// scientific notation outside `1e-5 ..= 10^digits`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let prec = digits.max(1) - 1;
    let sci = format!("{x:.prec$e}");
    // Exponent after rounding, so 9.9999 -> 1.0e1 lands in the right branch.
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exp) {
        let decimals = (prec as i32 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}
