//! Mutual-information payoffs for a fixed bias `p`.
//!
//! The simple payoff uses the identity
//! `I(p) = p d(a1 || a) + (1 - p) d(a0 || a)` and the joint payoff
//! `I(p) = (h(a) - a_h) / c` with `a_h = sum_z P(Z = z) h(theta_z)`.
//! All values are in bits. Binomial weights are evaluated in log space and
//! accumulated from the mode outwards, so `c` in the tens of thousands is fine.

use alloc::vec::Vec;
use core::fmt;

use crate::channels::CollusionChannel;
use crate::math::{exp, ln, ln_1p, ln_gamma, LN_2};
use crate::{Error, Result};

/// A bias strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BiasPoint(pub(crate) f64);

impl BiasPoint {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(BiasPoint(p))
        } else {
            Err(Error::BadBias(p))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// The mirrored bias `1 - p`.
    pub fn mirrored(self) -> Self {
        BiasPoint(1.0 - self.0)
    }
}

impl fmt::Display for BiasPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Which decoder the payoff describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    /// Scores each user on their own code word: `I(X1; Y)`.
    Simple,
    /// Uses the whole code: `I(Z; Y) / c`.
    Joint,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderKind::Simple => f.write_str("simple"),
            DecoderKind::Joint => f.write_str("joint"),
        }
    }
}

/// Output-1 probabilities: marginally (`a`) and given the first colluder's
/// symbol (`a0`, `a1`). The `one_minus_*` fields are the complements summed
/// directly, which keeps them accurate when the probability is close to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalTriple {
    pub a: f64,
    pub a0: f64,
    pub a1: f64,
    pub one_minus_a: f64,
    pub one_minus_a0: f64,
    pub one_minus_a1: f64,
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// `ln(n!) - ln(sqrt(2 pi n) (n/e)^n)` for integer `n >= 1`.
fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        return ln_gamma(n + 1.0) - (n + 0.5) * ln(n) + n - LN_SQRT_2PI;
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / m) + m - x`, accurate when `x` is close to `m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * j + 1.0);
            if next == s {
                return next;
            }
            s = next;
            j += 1.0;
        }
    }
    x * ln(x / m) + m - x
}

/// `ln P(Binomial(c, p) = z)`.
///
/// Uses the saddle-point expansion (Stirling error plus deviance terms), so the
/// result stays finite and accurate for `c` up to 1e6 and `p` down to 1e-9.
///
/// # Panics
/// If `z > c`.
pub fn log_binomial_pmf(c: u64, z: u64, p: BiasPoint) -> f64 {
    assert!(z <= c, "tally {z} exceeds coalition size {c}");
    let p = p.get();
    let q = 1.0 - p;
    let ln_p = if p > 0.5 { ln_1p(-q) } else { ln(p) };
    let ln_q = if p < 0.5 { ln_1p(-p) } else { ln(q) };
    let n = c as f64;
    let x = z as f64;
    if z == 0 {
        return n * ln_q;
    }
    if z == c {
        return n * ln_p;
    }
    let lc = stirling_error(n)
        - stirling_error(x)
        - stirling_error(n - x)
        - deviance(x, n * p)
        - deviance(n - x, n * q);
    let lf = LN_2PI + ln(x) + ln_1p(-x / n);
    lc - 0.5 * lf
}

/// Binomial(c, p) probabilities for z = 0..=c together with the order in which
/// to visit them (largest first).
struct BinomialWeights {
    pmf: Vec<f64>,
    order: Vec<usize>,
}

impl BinomialWeights {
    fn new(c: usize, p: BiasPoint) -> Self {
        let log_pmf: Vec<f64> = (0..=c)
            .map(|z| log_binomial_pmf(c as u64, z as u64, p))
            .collect();
        // The pmf is log-concave, so merging the two monotone runs on either
        // side of the mode yields descending order.
        let mode = log_pmf
            .iter()
            .enumerate()
            .fold(0, |best, (z, &v)| if v > log_pmf[best] { z } else { best });
        let mut order = Vec::with_capacity(c + 1);
        order.push(mode);
        let (mut left, mut right) = (mode, mode + 1);
        while left > 0 || right <= c {
            let take_left = if left == 0 {
                false
            } else if right > c {
                true
            } else {
                log_pmf[left - 1] >= log_pmf[right]
            };
            if take_left {
                left -= 1;
                order.push(left);
            } else {
                order.push(right);
                right += 1;
            }
        }
        let pmf = log_pmf.into_iter().map(exp).collect();
        BinomialWeights { pmf, order }
    }

    /// `sum_z P(Z = z) f(z)`, accumulated largest weight first.
    fn expect(&self, mut f: impl FnMut(usize) -> f64) -> f64 {
        self.order.iter().map(|&z| self.pmf[z] * f(z)).sum()
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainError(x))
    }
}

/// `d(alpha || 1/2)`, which equals `1 - h(alpha)`.
fn divergence_from_half(alpha: f64) -> f64 {
    let not_alpha = 1.0 - alpha;
    if alpha == 0.0 || not_alpha == 0.0 {
        return 1.0;
    }
    // 2 alpha - 1 is exact for alpha in [1/4, 1].
    let delta = 2.0 * alpha - 1.0;
    ((alpha * ln_1p(delta) + not_alpha * ln_1p(-delta)) / LN_2).max(0.0)
}

/// Binary entropy `h(alpha)` in bits, with `0 log 0 = 0`.
pub fn binary_entropy(alpha: f64) -> Result<f64> {
    check_unit(alpha)?;
    Ok(entropy_unchecked(alpha))
}

fn entropy_unchecked(alpha: f64) -> f64 {
    if alpha == 0.0 || alpha == 1.0 {
        return 0.0;
    }
    if (alpha - 0.5).abs() < 0.25 {
        // Near the maximum, 1 - d(alpha || 1/2) is the accurate form.
        return 1.0 - divergence_from_half(alpha);
    }
    let not_alpha = 1.0 - alpha;
    -(alpha * ln(alpha) + not_alpha * ln_1p(-alpha)) / LN_2
}

/// `d(alpha || beta)` given both probabilities and their complements.
fn divergence_split(alpha: f64, not_alpha: f64, beta: f64, not_beta: f64) -> f64 {
    if (alpha > 0.0 && beta == 0.0) || (not_alpha > 0.0 && not_beta == 0.0) {
        return f64::INFINITY;
    }
    // Take the difference from whichever side is small, where it is accurate.
    let delta = if beta <= 0.5 {
        alpha - beta
    } else {
        not_beta - not_alpha
    };
    let first = x_ln_ratio(alpha, beta, delta);
    let second = x_ln_ratio(not_alpha, not_beta, -delta);
    ((first + second) / LN_2).max(0.0)
}

/// `x ln(x / y)` given `diff = x - y`. The `ln_1p` form is only used when the
/// ratio is close to 1; far from it `diff` may have lost every digit of `x`.
fn x_ln_ratio(x: f64, y: f64, diff: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let r = diff / y;
    if r.abs() < 0.5 {
        x * ln_1p(r)
    } else {
        x * (ln(x) - ln(y))
    }
}

/// Kullback-Leibler divergence `d(alpha || beta)` between Bernoulli laws, in bits.
///
/// Returns `+inf` when `alpha` puts mass where `beta` has none.
pub fn kl_divergence(alpha: f64, beta: f64) -> Result<f64> {
    check_unit(alpha)?;
    check_unit(beta)?;
    Ok(divergence_split(alpha, 1.0 - alpha, beta, 1.0 - beta))
}

/// `P(Y = 1)` and `P(Y = 0)`, each summed directly.
fn output_law(channel: &CollusionChannel, weights: &BinomialWeights) -> (f64, f64) {
    let theta = channel.theta();
    let a = weights.expect(|z| theta[z]).min(1.0);
    let not_a = weights.expect(|z| 1.0 - theta[z]).min(1.0);
    (a, not_a)
}

/// Output probabilities `a(p)` and `1 - a(p)` without the conditional terms.
pub(crate) fn output_probability(channel: &CollusionChannel, p: BiasPoint) -> (f64, f64) {
    let weights = BinomialWeights::new(channel.coalition_size(), p);
    output_law(channel, &weights)
}

/// The marginal triple `(a, a0, a1)` at bias `p`.
pub fn marginals(channel: &CollusionChannel, p: BiasPoint) -> MarginalTriple {
    let c = channel.coalition_size();
    let theta = channel.theta();
    let full = BinomialWeights::new(c, p);
    let rest = BinomialWeights::new(c - 1, p);
    let (a, one_minus_a) = output_law(channel, &full);
    // X1 = 0: the tally is that of the other c - 1 colluders.
    let a0 = rest.expect(|z| theta[z]).min(1.0);
    let one_minus_a0 = rest.expect(|z| 1.0 - theta[z]).min(1.0);
    // X1 = 1: shift by one.
    let a1 = rest.expect(|z| theta[z + 1]).min(1.0);
    let one_minus_a1 = rest.expect(|z| 1.0 - theta[z + 1]).min(1.0);
    MarginalTriple {
        a,
        a0,
        a1,
        one_minus_a,
        one_minus_a0,
        one_minus_a1,
    }
}

/// Simple payoff `I(X1; Y)` in bits.
pub fn simple_payoff(channel: &CollusionChannel, p: BiasPoint) -> f64 {
    let m = marginals(channel, p);
    simple_from_marginals(&m, p)
}

fn simple_from_marginals(m: &MarginalTriple, p: BiasPoint) -> f64 {
    if m.a <= 0.0 || m.one_minus_a <= 0.0 {
        // a in {0, 1} forces a0 = a1 = a.
        return 0.0;
    }
    let p = p.get();
    let one = divergence_split(m.a1, m.one_minus_a1, m.a, m.one_minus_a);
    let zero = divergence_split(m.a0, m.one_minus_a0, m.a, m.one_minus_a);
    p * one + (1.0 - p) * zero
}

/// Joint payoff `I(Z; Y) / c` in bits.
pub fn joint_payoff(channel: &CollusionChannel, p: BiasPoint) -> f64 {
    let (a, a_h) = joint_terms(channel, p);
    let c = channel.coalition_size() as f64;
    ((entropy_unchecked(a) - a_h) / c).max(0.0)
}

fn joint_terms(channel: &CollusionChannel, p: BiasPoint) -> (f64, f64) {
    let theta = channel.theta();
    let weights = BinomialWeights::new(channel.coalition_size(), p);
    let (a, _) = output_law(channel, &weights);
    let a_h = weights.expect(|z| entropy_unchecked(theta[z]));
    (a, a_h)
}

/// `d(a || 1/2) + a_h`, i.e. `1 - c I_joint(p)`. Minimizing it locates the
/// joint optimum far more sharply than maximizing `h(a)` directly, which is
/// flat to machine precision around `a = 1/2`.
pub(crate) fn joint_deficit(channel: &CollusionChannel, p: BiasPoint) -> f64 {
    let theta = channel.theta();
    let weights = BinomialWeights::new(channel.coalition_size(), p);
    let (a, not_a) = output_law(channel, &weights);
    let a_h = weights.expect(|z| entropy_unchecked(theta[z]));
    let from_half = if a <= 0.5 {
        divergence_from_half(a)
    } else {
        divergence_from_half(1.0 - not_a)
    };
    from_half + a_h
}

/// Payoff for either decoder.
pub fn payoff(channel: &CollusionChannel, p: BiasPoint, decoder: DecoderKind) -> f64 {
    match decoder {
        DecoderKind::Simple => simple_payoff(channel, p),
        DecoderKind::Joint => joint_payoff(channel, p),
    }
}
