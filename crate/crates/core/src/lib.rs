//! Capacities of tally-based collusion channels.
//!
//! A collusion channel (or group-testing model) with `c` participants is fully
//! described by a vector `theta` of length `c + 1`, where `theta[z]` is the
//! probability that the output symbol is 1 when `z` of the `c` participants hold
//! a 1. Every participant's symbol is drawn independently with bias `p`.
//!
//! The crate evaluates two payoffs per bias `p`:
//!
//! - the *simple* payoff `I(X1; Y)`, the information one participant's symbol
//!   carries about the output,
//! - the *joint* payoff `I(Z; Y) / c`, the per-participant information of the
//!   whole tally,
//!
//! and maximizes them over `p` ([`optimize::maximize_payoff`]) to obtain simple
//! and joint capacities. [`asymptotics`] holds closed-form large-`c` predictions
//! for the built-in models.
//!
//! The crate is `no_std` (it needs `alloc`); all floating point math goes through
//! `libm`, so results are identical across platforms.
//!
//! ```
//! use fpcap_core::channels::CollusionChannel;
//! use fpcap_core::optimize::{maximize_payoff, DecoderKind, OptimizerOptions};
//!
//! let channel = CollusionChannel::all1(2).unwrap();
//! let result = maximize_payoff(&channel, DecoderKind::Joint, &OptimizerOptions::default()).unwrap();
//! assert!((result.capacity - 0.5).abs() < 1e-12);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod channels;
mod error;
mod math;
pub mod optimize;
pub mod payoff;

pub use error::{Error, Result};
