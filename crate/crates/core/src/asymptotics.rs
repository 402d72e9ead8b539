//! Leading-order capacity predictions for the built-in models, and reports
//! comparing them against numerically optimized capacities.
//!
//! Predictions carry no correction terms in `1/c`; how far the optimizer lands
//! from them is what [`convergence_report`] measures. For the noisy group
//! testing models the first-order term in the noise rate `r` can be included or
//! dropped via [`NoiseOrder`].

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::channels::CollusionChannel;
use crate::math::{ln, log2, pow, xlnx, LN_2};
use crate::optimize::{maximize_payoff, DecoderKind, OptimizerOptions};
use crate::payoff::binary_entropy;
use crate::{Error, Result};

/// Models with closed-form capacity results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelId {
    Interleaving,
    All1,
    Majority,
    Minority,
    Coinflip,
    Additive { r: f64 },
    Dilution { r: f64 },
    Threshold { u: usize },
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::Interleaving => f.write_str("interleaving"),
            ModelId::All1 => f.write_str("all1"),
            ModelId::Majority => f.write_str("majority"),
            ModelId::Minority => f.write_str("minority"),
            ModelId::Coinflip => f.write_str("coinflip"),
            ModelId::Additive { r } => write!(f, "additive:r={r}"),
            ModelId::Dilution { r } => write!(f, "dilution:r={r}"),
            ModelId::Threshold { u } => write!(f, "threshold:u={u}"),
        }
    }
}

impl ModelId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelId::Additive { r } | ModelId::Dilution { r } if !(0.0..1.0).contains(&r) => {
                Err(Error::BadRate(r))
            }
            ModelId::Threshold { u: 0 } => Err(Error::BadThreshold {
                lower: 0,
                upper: 0,
                c: 0,
            }),
            _ => Ok(()),
        }
    }

    /// The channel this model describes for a coalition of size `c`.
    pub fn to_channel(&self, c: usize) -> Result<CollusionChannel> {
        match *self {
            ModelId::Interleaving => CollusionChannel::interleaving(c),
            ModelId::All1 => CollusionChannel::all1(c),
            ModelId::Majority => CollusionChannel::majority(c),
            ModelId::Minority => CollusionChannel::minority(c),
            ModelId::Coinflip => CollusionChannel::coinflip(c),
            ModelId::Additive { r } => CollusionChannel::additive(c, r),
            ModelId::Dilution { r } => CollusionChannel::dilution(c, r),
            ModelId::Threshold { u } => CollusionChannel::threshold(c, u),
        }
    }

    /// Power of `c` by which the capacity decays: 2 for interleaving, 1 otherwise.
    pub fn capacity_power(&self) -> i32 {
        match self {
            ModelId::Interleaving => 2,
            _ => 1,
        }
    }
}

/// Whether noisy-model predictions include the first-order term in `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseOrder {
    /// Drop every `r` term; additive and dilution collapse onto all-1.
    Leading,
    /// Keep the first-order `r` terms.
    #[default]
    FirstOrder,
}

fn entropy(r: f64) -> f64 {
    binary_entropy(r).unwrap_or(f64::NAN)
}

/// Leading-order capacity in bits, with first-order noise terms.
pub fn predicted_capacity(model: ModelId, decoder: DecoderKind, c: usize) -> Result<f64> {
    predicted_capacity_with(model, decoder, c, NoiseOrder::FirstOrder)
}

pub fn predicted_capacity_with(
    model: ModelId,
    decoder: DecoderKind,
    c: usize,
    order: NoiseOrder,
) -> Result<f64> {
    model.validate()?;
    if c == 0 {
        return Err(Error::EmptyCoalition);
    }
    let cf = c as f64;
    let model = match (model, order) {
        (ModelId::Additive { .. } | ModelId::Dilution { .. }, NoiseOrder::Leading) => ModelId::All1,
        (m, _) => m,
    };
    use DecoderKind::{Joint, Simple};
    let scaled = match (model, decoder) {
        (ModelId::Interleaving, _) => return Ok(1.0 / (2.0 * cf * cf * LN_2)),
        (ModelId::All1 | ModelId::Minority, Simple) => LN_2,
        (ModelId::Majority, Simple) => 1.0 / (PI * LN_2),
        (ModelId::Coinflip, Simple) => LN_2 / 4.0,
        (ModelId::Coinflip, Joint) => log2(1.25),
        (ModelId::Additive { r }, Simple) => LN_2 - r,
        (ModelId::Additive { r }, Joint) => 1.0 - 0.5 * entropy(r),
        (ModelId::Dilution { r }, Simple) => {
            LN_2 * (1.0 + xlnx(r) / (2.0 * LN_2) - r * (1.0 - LN_2) / (2.0 * LN_2))
        }
        (ModelId::Dilution { r }, Joint) => 1.0 - 0.5 * LN_2 * entropy(r),
        (ModelId::Threshold { .. }, Simple) => {
            return Err(Error::Unavailable("threshold simple capacity"))
        }
        (
            ModelId::All1 | ModelId::Majority | ModelId::Minority | ModelId::Threshold { .. },
            Joint,
        ) => 1.0,
    };
    Ok(scaled / cf)
}

/// Leading-order maximizing bias, with first-order noise terms.
pub fn predicted_optimal_p(model: ModelId, decoder: DecoderKind, c: usize) -> Result<f64> {
    predicted_optimal_p_with(model, decoder, c, NoiseOrder::FirstOrder)
}

pub fn predicted_optimal_p_with(
    model: ModelId,
    decoder: DecoderKind,
    c: usize,
    order: NoiseOrder,
) -> Result<f64> {
    model.validate()?;
    if c == 0 {
        return Err(Error::EmptyCoalition);
    }
    let cf = c as f64;
    let base = LN_2 / cf;
    let model = match (model, order) {
        (ModelId::Additive { .. } | ModelId::Dilution { .. }, NoiseOrder::Leading) => {
            return Ok(base)
        }
        (m, _) => m,
    };
    use DecoderKind::{Joint, Simple};
    Ok(match (model, decoder) {
        (ModelId::Interleaving, Simple) => 0.5,
        (ModelId::Interleaving, Joint) => {
            return Err(Error::Unavailable(
                "interleaving joint maximizer (payoff is asymptotically flat)",
            ))
        }
        (ModelId::All1 | ModelId::Minority, Simple) => base,
        (ModelId::All1, Joint) => 1.0 - pow(2.0, -1.0 / cf),
        (ModelId::Majority, _) | (ModelId::Minority, Joint) => 0.5,
        (ModelId::Coinflip, Simple) => base / 2.0,
        (ModelId::Coinflip, Joint) => ln(5.0 / 3.0) / cf,
        (ModelId::Additive { r }, Simple) => {
            base * (1.0 + r * (2.0 * LN_2 - 1.0) / (2.0 * LN_2 * (1.0 - LN_2)))
        }
        (ModelId::Additive { r }, Joint) => base * (1.0 - (r + xlnx(r)) / (2.0 * LN_2)),
        (ModelId::Dilution { r }, Simple) => {
            base * (1.0
                + xlnx(r) / (4.0 * LN_2)
                + r * (-3.0 * LN_2 * LN_2 + 5.0 * LN_2 - 1.0) / (4.0 * LN_2 * (1.0 - LN_2)))
        }
        (ModelId::Dilution { r }, Joint) => base * (1.0 + r - 0.5 * (1.0 - LN_2) * entropy(r)),
        (ModelId::Threshold { .. }, Simple) => {
            return Err(Error::Unavailable("threshold simple maximizer"))
        }
        (ModelId::Threshold { u }, Joint) => (u as f64 - 1.0 / 3.0) / cf,
    })
}

/// Interval `[(u - 1)/c, (u + 1)/c]` that contains the joint maximizer of the
/// threshold model when `u` grows linearly with `c` (the binomial median lies
/// within one of `c p`).
pub fn threshold_p_interval(u: usize, c: usize) -> (f64, f64) {
    let (u, c) = (u as f64, c as f64);
    (((u - 1.0) / c).max(0.0), ((u + 1.0) / c).min(1.0))
}

/// Number of tests or segments, `log2(n) / capacity`, needed to single out the
/// guilty set among `n` items.
pub fn code_length_bound(capacity: f64, population: u64) -> Result<f64> {
    if !(capacity > 0.0 && capacity.is_finite()) {
        return Err(Error::DegenerateCapacity(capacity));
    }
    if population < 2 {
        return Err(Error::BadPopulation(population));
    }
    Ok(log2(population as f64) / capacity)
}

/// One coalition size of a [`convergence_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub c: usize,
    pub numeric_capacity: f64,
    pub predicted_capacity: f64,
    /// `|numeric - predicted|` times `c^k`, `k` the model's capacity power.
    pub scaled_residual: f64,
    pub numeric_p_times_c: f64,
    /// `None` where no maximizer prediction exists.
    pub predicted_p_times_c: Option<f64>,
}

impl ConvergenceRow {
    /// `c^k` times the numeric capacity.
    pub fn scaled_numeric(&self, power: i32) -> f64 {
        self.numeric_capacity * pow(self.c as f64, power as f64)
    }
}

/// Optimizes the model at each `c` and lines the result up with the prediction.
pub fn convergence_report(
    model: ModelId,
    decoder: DecoderKind,
    c_values: &[usize],
    options: &OptimizerOptions,
    order: NoiseOrder,
) -> Result<Vec<ConvergenceRow>> {
    let power = model.capacity_power() as f64;
    c_values
        .iter()
        .map(|&c| {
            let predicted = predicted_capacity_with(model, decoder, c, order)?;
            let predicted_p = match predicted_optimal_p_with(model, decoder, c, order) {
                Ok(p) => Some(p * c as f64),
                Err(Error::Unavailable(_)) => None,
                Err(e) => return Err(e),
            };
            let channel = model.to_channel(c)?;
            let result = maximize_payoff(&channel, decoder, options)?;
            Ok(ConvergenceRow {
                c,
                numeric_capacity: result.capacity,
                predicted_capacity: predicted,
                scaled_residual: (result.capacity - predicted).abs() * pow(c as f64, power),
                numeric_p_times_c: result.p_star.get() * c as f64,
                predicted_p_times_c: predicted_p,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use DecoderKind::{Joint, Simple};

    #[test]
    fn table_one_constants() {
        let c = 1000usize;
        let cf = c as f64;
        let two_digits = |x: f64| libm::round(x * 100.0) / 100.0;
        let cases = [
            (ModelId::Interleaving, Simple, 2, 0.72),
            (ModelId::Interleaving, Joint, 2, 0.72),
            (ModelId::All1, Simple, 1, 0.69),
            (ModelId::All1, Joint, 1, 1.00),
            (ModelId::Majority, Simple, 1, 0.46),
            (ModelId::Majority, Joint, 1, 1.00),
            (ModelId::Minority, Simple, 1, 0.69),
            (ModelId::Coinflip, Simple, 1, 0.17),
            (ModelId::Coinflip, Joint, 1, 0.32),
        ];
        for (model, decoder, power, printed) in cases {
            let scaled = predicted_capacity(model, decoder, c).unwrap() * libm::pow(cf, power as f64);
            assert_eq!(two_digits(scaled), printed, "{model} {decoder}");
        }
    }

    #[test]
    fn headline_predictions() {
        assert!((predicted_capacity(ModelId::All1, Simple, 7).unwrap() - LN_2 / 7.0).abs() < 1e-16);
        let v = predicted_capacity(ModelId::Interleaving, Joint, 10).unwrap();
        assert!((v - 1.0 / (200.0 * LN_2)).abs() < 1e-16);
        assert!((v - 0.007_213_5).abs() < 1e-7);
        assert!(matches!(
            predicted_capacity(ModelId::Threshold { u: 3 }, Simple, 10),
            Err(Error::Unavailable(_))
        ));
        assert_eq!(predicted_optimal_p(ModelId::Majority, Simple, 11).unwrap(), 0.5);
        let p = predicted_optimal_p(ModelId::All1, Joint, 2).unwrap();
        assert!((p - 0.292_893_218_813_452_5).abs() < 1e-15);
        let p = predicted_optimal_p(ModelId::Threshold { u: 5 }, Joint, 100).unwrap();
        assert!((p - (5.0 - 1.0 / 3.0) / 100.0).abs() < 1e-16);
    }

    #[test]
    fn noiseless_noise_models_match_all1() {
        for decoder in [Simple, Joint] {
            for c in [3usize, 10, 1000] {
                let all1 = predicted_capacity(ModelId::All1, decoder, c).unwrap();
                assert_eq!(predicted_capacity(ModelId::Additive { r: 0.0 }, decoder, c).unwrap(), all1);
                assert_eq!(predicted_capacity(ModelId::Dilution { r: 0.0 }, decoder, c).unwrap(), all1);
                for r in [0.0, 0.05, 0.3] {
                    for m in [ModelId::Additive { r }, ModelId::Dilution { r }] {
                        assert_eq!(
                            predicted_capacity_with(m, decoder, c, NoiseOrder::Leading).unwrap(),
                            all1
                        );
                    }
                }
            }
        }
        // 0 ln 0 = 0 keeps the r = 0 maximizers finite.
        let p = predicted_optimal_p(ModelId::Additive { r: 0.0 }, Joint, 10).unwrap();
        assert_eq!(p, LN_2 / 10.0);
    }

    #[test]
    fn first_order_noise_terms() {
        let c = 1000usize;
        let h = binary_entropy(0.05).unwrap();
        let add_j = predicted_capacity(ModelId::Additive { r: 0.05 }, Joint, c).unwrap() * 1000.0;
        assert!((add_j - (1.0 - h / 2.0)).abs() < 1e-14);
        assert!((add_j - 0.856_80).abs() < 1e-5);
        let add_s = predicted_capacity(ModelId::Additive { r: 0.05 }, Simple, c).unwrap() * 1000.0;
        assert!((add_s - (LN_2 - 0.05)).abs() < 1e-14);
        let dil_j = predicted_capacity(ModelId::Dilution { r: 0.05 }, Joint, c).unwrap() * 1000.0;
        assert!((dil_j - 0.900_74).abs() < 1e-5);
    }

    #[test]
    fn invalid_models() {
        assert!(predicted_capacity(ModelId::Additive { r: 1.0 }, Joint, 5).is_err());
        assert!(predicted_capacity(ModelId::Threshold { u: 0 }, Joint, 5).is_err());
        assert!(predicted_capacity(ModelId::All1, Joint, 0).is_err());
        assert!(matches!(
            predicted_optimal_p(ModelId::Interleaving, Joint, 5),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn code_lengths() {
        let c = 12usize;
        let n = 1u64 << c;
        let len = code_length_bound(1.0 / c as f64, n).unwrap();
        assert!((len - (c * c) as f64).abs() < 1e-9);
        // ln2 / c capacity: log2(n) c / ln2 = c ln(n) / ln2^2 ~ 2.08 c ln n
        let c = 100.0;
        let len = code_length_bound(LN_2 / c, 1_000_000).unwrap();
        let ratio = len / (c * libm::log(1e6));
        assert!((ratio - 2.08).abs() < 0.005, "{ratio}");
        assert_eq!(code_length_bound(0.0, 10), Err(Error::DegenerateCapacity(0.0)));
        assert_eq!(code_length_bound(0.1, 1), Err(Error::BadPopulation(1)));
    }

    #[test]
    fn threshold_interval_contains_prediction() {
        let (lo, hi) = threshold_p_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi);
    }

    #[test]
    fn model_display() {
        assert_eq!(ModelId::Additive { r: 0.05 }.to_string(), "additive:r=0.05");
        assert_eq!(ModelId::Threshold { u: 5 }.to_string(), "threshold:u=5");
    }
}
