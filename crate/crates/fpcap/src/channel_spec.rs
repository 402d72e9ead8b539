//! Text form of channels, as accepted on the command line.
//!
//! ```text
//! interleaving | all1 | majority | minority | coinflip
//! additive:r=<float> | dilution:r=<float> | threshold:u=<int>
//! thresholdgap:l=<int>,u=<int>,gap=<coin|int>
//! custom:<float>,<float>,...
//! ```
//!
//! Floats are written in Rust's shortest round-trip form, so
//! `spec.to_string().parse()` returns the same spec bit for bit.

use std::fmt;
use std::str::FromStr;

use fpcap_core::asymptotics::ModelId;
use fpcap_core::channels::{CollusionChannel, GapKind};

/// A channel description that still needs a coalition size, except `Custom`.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Interleaving,
    All1,
    Majority,
    Minority,
    Coinflip,
    Additive { r: f64 },
    Dilution { r: f64 },
    Threshold { u: usize },
    ThresholdGap { l: usize, u: usize, gap: GapKind },
    Custom(Vec<f64>),
}

/// Malformed spec text. `token` is the offending piece of input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid channel spec: {reason} (at `{token}`)")]
pub struct SpecError {
    pub token: String,
    pub reason: &'static str,
}

fn fail<T>(token: &str, reason: &'static str) -> Result<T, SpecError> {
    Err(SpecError {
        token: token.to_string(),
        reason,
    })
}

/// Splits `key=value` and checks the key.
fn keyed<'a>(part: &'a str, key: &str) -> Result<&'a str, SpecError> {
    match part.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => fail(part, "unexpected parameter"),
    }
}

fn float(token: &str) -> Result<f64, SpecError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => fail(token, "expected a finite number"),
    }
}

fn integer(token: &str) -> Result<usize, SpecError> {
    token.parse().or_else(|_| fail(token, "expected a non-negative integer"))
}

fn no_params(name: &str, params: Option<&str>) -> Result<(), SpecError> {
    match params {
        None => Ok(()),
        Some(_) => fail(name, "takes no parameters"),
    }
}

impl FromStr for ChannelSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let need = || match params {
            Some(p) => Ok(p),
            None => fail(name, "missing parameters"),
        };
        let spec = match name {
            "interleaving" => no_params(s, params).map(|_| ChannelSpec::Interleaving)?,
            "all1" => no_params(s, params).map(|_| ChannelSpec::All1)?,
            "majority" => no_params(s, params).map(|_| ChannelSpec::Majority)?,
            "minority" => no_params(s, params).map(|_| ChannelSpec::Minority)?,
            "coinflip" => no_params(s, params).map(|_| ChannelSpec::Coinflip)?,
            "additive" => ChannelSpec::Additive {
                r: float(keyed(need()?, "r")?)?,
            },
            "dilution" => ChannelSpec::Dilution {
                r: float(keyed(need()?, "r")?)?,
            },
            "threshold" => ChannelSpec::Threshold {
                u: integer(keyed(need()?, "u")?)?,
            },
            "thresholdgap" => {
                let parts: Vec<&str> = need()?.split(',').collect();
                let [l, u, gap] = parts[..] else {
                    return fail(s, "expected l=<int>,u=<int>,gap=<coin|int>");
                };
                let gap = match keyed(gap, "gap")? {
                    "coin" => GapKind::Coin,
                    "int" => GapKind::Interleaving,
                    other => return fail(other, "gap must be `coin` or `int`"),
                };
                ChannelSpec::ThresholdGap {
                    l: integer(keyed(l, "l")?)?,
                    u: integer(keyed(u, "u")?)?,
                    gap,
                }
            }
            "custom" => ChannelSpec::Custom(
                need()?
                    .split(',')
                    .map(|t| float(t.trim()))
                    .collect::<Result<_, _>>()?,
            ),
            _ => return fail(name, "unknown channel"),
        };
        Ok(spec)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::Interleaving => f.write_str("interleaving"),
            ChannelSpec::All1 => f.write_str("all1"),
            ChannelSpec::Majority => f.write_str("majority"),
            ChannelSpec::Minority => f.write_str("minority"),
            ChannelSpec::Coinflip => f.write_str("coinflip"),
            ChannelSpec::Additive { r } => write!(f, "additive:r={r:?}"),
            ChannelSpec::Dilution { r } => write!(f, "dilution:r={r:?}"),
            ChannelSpec::Threshold { u } => write!(f, "threshold:u={u}"),
            ChannelSpec::ThresholdGap { l, u, gap } => {
                write!(f, "thresholdgap:l={l},u={u},gap={gap}")
            }
            ChannelSpec::Custom(theta) => {
                f.write_str("custom:")?;
                for (i, t) in theta.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t:?}")?;
                }
                Ok(())
            }
        }
    }
}

impl ChannelSpec {
    /// Coalition size fixed by the spec itself (only for `custom`).
    pub fn intrinsic_size(&self) -> Option<usize> {
        match self {
            ChannelSpec::Custom(theta) => Some(theta.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// Builds the channel for coalition size `c`. A custom spec ignores `c`;
    /// callers check [`ChannelSpec::intrinsic_size`] when they care.
    pub fn build(&self, c: usize) -> fpcap_core::Result<CollusionChannel> {
        match *self {
            ChannelSpec::Interleaving => CollusionChannel::interleaving(c),
            ChannelSpec::All1 => CollusionChannel::all1(c),
            ChannelSpec::Majority => CollusionChannel::majority(c),
            ChannelSpec::Minority => CollusionChannel::minority(c),
            ChannelSpec::Coinflip => CollusionChannel::coinflip(c),
            ChannelSpec::Additive { r } => CollusionChannel::additive(c, r),
            ChannelSpec::Dilution { r } => CollusionChannel::dilution(c, r),
            ChannelSpec::Threshold { u } => CollusionChannel::threshold(c, u),
            ChannelSpec::ThresholdGap { l, u, gap } => CollusionChannel::threshold_gap(c, l, u, gap),
            ChannelSpec::Custom(ref theta) => CollusionChannel::new(theta.clone()),
        }
    }

    /// The model with closed-form predictions, if this spec names one.
    pub fn model(&self) -> Option<ModelId> {
        Some(match *self {
            ChannelSpec::Interleaving => ModelId::Interleaving,
            ChannelSpec::All1 => ModelId::All1,
            ChannelSpec::Majority => ModelId::Majority,
            ChannelSpec::Minority => ModelId::Minority,
            ChannelSpec::Coinflip => ModelId::Coinflip,
            ChannelSpec::Additive { r } => ModelId::Additive { r },
            ChannelSpec::Dilution { r } => ModelId::Dilution { r },
            ChannelSpec::Threshold { u } => ModelId::Threshold { u },
            ChannelSpec::ThresholdGap { .. } | ChannelSpec::Custom(_) => return None,
        })
    }
}

impl From<ModelId> for ChannelSpec {
    fn from(m: ModelId) -> Self {
        match m {
            ModelId::Interleaving => ChannelSpec::Interleaving,
            ModelId::All1 => ChannelSpec::All1,
            ModelId::Majority => ChannelSpec::Majority,
            ModelId::Minority => ChannelSpec::Minority,
            ModelId::Coinflip => ChannelSpec::Coinflip,
            ModelId::Additive { r } => ChannelSpec::Additive { r },
            ModelId::Dilution { r } => ChannelSpec::Dilution { r },
            ModelId::Threshold { u } => ChannelSpec::Threshold { u },
        }
    }
}

/// Parses a model name: any spec except `thresholdgap` and `custom`.
pub fn parse_model(s: &str) -> Result<ModelId, SpecError> {
    let spec: ChannelSpec = s.parse()?;
    match spec.model() {
        Some(m) => Ok(m),
        None => fail(s, "no closed-form model for this channel"),
    }
}

/// The `custom:` text of an arbitrary channel.
pub fn format_channel(channel: &CollusionChannel) -> String {
    ChannelSpec::Custom(channel.theta().to_vec()).to_string()
}
