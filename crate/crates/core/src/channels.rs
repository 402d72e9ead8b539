//! Collusion channels and group-testing models.
//!
//! Every model here is a [`CollusionChannel`]: the output bit depends on the
//! inputs only through the tally `z`, the number of participants holding a 1.

use alloc::vec::Vec;
use core::fmt;

use crate::math::powi;
use crate::{Error, Result};

/// Output model `theta[z] = P(Y = 1 | Z = z)` for a coalition of `c` members.
///
/// Invariants: `c >= 1`, `theta.len() == c + 1`, every entry in `[0, 1]`.
/// Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CollusionChannel {
    theta: Vec<f64>,
}

/// How a threshold model behaves for tallies strictly between `l` and `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapKind {
    /// Gap outcomes are a fair coin flip.
    Coin,
    /// Gap outcomes are positive with probability `(z - l) / (u - l)`.
    Interleaving,
}

impl fmt::Display for GapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapKind::Coin => f.write_str("coin"),
            GapKind::Interleaving => f.write_str("int"),
        }
    }
}

fn check_coalition(c: usize) -> Result<()> {
    if c == 0 {
        Err(Error::EmptyCoalition)
    } else {
        Ok(())
    }
}

fn check_odd(c: usize) -> Result<()> {
    check_coalition(c)?;
    if c % 2 == 0 {
        Err(Error::EvenCoalition(c))
    } else {
        Ok(())
    }
}

fn check_rate(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::BadRate(r))
    }
}

/// Linear ramp `(z - from) / width` for `z` in `from..=from + width`, filled
/// so that `ramp[k] == 1 - ramp[width - k]` holds exactly.
fn symmetric_ramp(width: usize) -> Vec<f64> {
    let w = width as f64;
    let mut ramp = alloc::vec![0.0; width + 1];
    for k in 0..=width {
        if 2 * k >= width {
            ramp[k] = k as f64 / w;
        }
    }
    for k in 0..=width {
        if 2 * k < width {
            ramp[k] = 1.0 - ramp[width - k];
        }
    }
    ramp
}

impl CollusionChannel {
    /// Arbitrary user-supplied channel; `c` is `theta.len() - 1`.
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.len() < 2 {
            return Err(Error::BadProbability("need at least two entries (c >= 1)"));
        }
        if theta.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(Error::BadProbability("entries must lie in [0, 1]"));
        }
        Ok(CollusionChannel { theta })
    }

    /// Interleaving attack: a uniformly random colluder's symbol is output.
    pub fn interleaving(c: usize) -> Result<Self> {
        check_coalition(c)?;
        Ok(CollusionChannel {
            theta: symmetric_ramp(c),
        })
    }

    /// All-1 attack, identical to classical (noiseless) group testing.
    pub fn all1(c: usize) -> Result<Self> {
        check_coalition(c)?;
        let mut theta = alloc::vec![1.0; c + 1];
        theta[0] = 0.0;
        Ok(CollusionChannel { theta })
    }

    /// Majority voting; only defined for odd `c`.
    pub fn majority(c: usize) -> Result<Self> {
        check_odd(c)?;
        let theta = (0..=c).map(|z| if 2 * z > c { 1.0 } else { 0.0 }).collect();
        Ok(CollusionChannel { theta })
    }

    /// Minority voting; only defined for odd `c`.
    pub fn minority(c: usize) -> Result<Self> {
        check_odd(c)?;
        let theta = (0..=c)
            .map(|z| if z == c || (z > 0 && 2 * z < c) { 1.0 } else { 0.0 })
            .collect();
        Ok(CollusionChannel { theta })
    }

    /// Coin-flip attack: mixed inputs produce a fair coin.
    pub fn coinflip(c: usize) -> Result<Self> {
        check_coalition(c)?;
        let mut theta = alloc::vec![0.5; c + 1];
        theta[0] = 0.0;
        theta[c] = 1.0;
        Ok(CollusionChannel { theta })
    }

    /// Group testing with additive noise: an empty pool tests positive with probability `r`.
    pub fn additive(c: usize, r: f64) -> Result<Self> {
        check_coalition(c)?;
        check_rate(r)?;
        let mut theta = alloc::vec![1.0; c + 1];
        theta[0] = r;
        Ok(CollusionChannel { theta })
    }

    /// Group testing with dilution noise: each defective is missed independently with probability `r`.
    pub fn dilution(c: usize, r: f64) -> Result<Self> {
        check_coalition(c)?;
        check_rate(r)?;
        let theta = (0..=c)
            .map(|z| if z == 0 { 0.0 } else { 1.0 - powi(r, z as i32) })
            .collect();
        Ok(CollusionChannel { theta })
    }

    /// Threshold group testing without a gap: positive iff `z >= u`.
    pub fn threshold(c: usize, u: usize) -> Result<Self> {
        check_coalition(c)?;
        if u == 0 || u > c {
            return Err(Error::BadThreshold {
                lower: u.saturating_sub(1),
                upper: u,
                c,
            });
        }
        let theta = (0..=c).map(|z| if z >= u { 1.0 } else { 0.0 }).collect();
        Ok(CollusionChannel { theta })
    }

    /// Threshold group testing: negative for `z <= l`, positive for `z >= u`,
    /// and the gap in between filled according to `gap`.
    pub fn threshold_gap(c: usize, l: usize, u: usize, gap: GapKind) -> Result<Self> {
        check_coalition(c)?;
        if l >= u || u > c {
            return Err(Error::BadThreshold {
                lower: l,
                upper: u,
                c,
            });
        }
        let mut theta = alloc::vec![0.0; c + 1];
        for t in theta.iter_mut().skip(u) {
            *t = 1.0;
        }
        match gap {
            GapKind::Coin => {
                for t in &mut theta[l + 1..u] {
                    *t = 0.5;
                }
            }
            GapKind::Interleaving => {
                let ramp = symmetric_ramp(u - l);
                theta[l..=u].copy_from_slice(&ramp);
            }
        }
        Ok(CollusionChannel { theta })
    }

    /// Number of colluders (or defectives), `c`.
    pub fn coalition_size(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// `theta_0 = 0` and `theta_c = 1`.
    pub fn satisfies_marking(&self) -> bool {
        self.theta[0] == 0.0 && self.theta[self.coalition_size()] == 1.0
    }

    /// Every `theta_z` is exactly 0 or 1.
    pub fn is_deterministic(&self) -> bool {
        self.theta.iter().all(|&t| t == 0.0 || t == 1.0)
    }

    /// `theta_z == 1 - theta_{c-z}` for every `z`, compared exactly.
    pub fn is_symbol_symmetric(&self) -> bool {
        let c = self.coalition_size();
        (0..=c).all(|z| self.theta[z] == 1.0 - self.theta[c - z])
    }

    /// All entries equal; such a channel carries no information.
    pub fn is_constant(&self) -> bool {
        self.theta.iter().all(|&t| t == self.theta[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn th(ch: Result<CollusionChannel>) -> Vec<f64> {
        ch.unwrap().theta().to_vec()
    }

    #[test]
    fn interleaving_examples() {
        assert_eq!(th(CollusionChannel::interleaving(2)), vec![0.0, 0.5, 1.0]);
        assert_eq!(th(CollusionChannel::interleaving(1)), vec![0.0, 1.0]);
        assert_eq!(
            th(CollusionChannel::interleaving(4)),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        for c in 1..200 {
            let ch = CollusionChannel::interleaving(c).unwrap();
            assert!(ch.is_symbol_symmetric(), "c={c}");
            for (z, &t) in ch.theta().iter().enumerate() {
                let direct = z as f64 / c as f64;
                assert!((t - direct).abs() <= f64::EPSILON, "c={c} z={z}");
            }
        }
    }

    #[test]
    fn all1_examples() {
        assert_eq!(th(CollusionChannel::all1(3)), vec![0.0, 1.0, 1.0, 1.0]);
        assert_eq!(th(CollusionChannel::all1(1)), vec![0.0, 1.0]);
        for c in 1..10 {
            let ch = CollusionChannel::all1(c).unwrap();
            assert!(ch.satisfies_marking());
            assert!(ch.is_deterministic());
            assert_eq!(ch.is_symbol_symmetric(), c == 1);
        }
    }

    #[test]
    fn voting_examples() {
        assert_eq!(th(CollusionChannel::majority(3)), vec![0.0, 0.0, 1.0, 1.0]);
        assert_eq!(
            th(CollusionChannel::minority(5)),
            vec![0.0, 1.0, 1.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(CollusionChannel::majority(4), Err(Error::EvenCoalition(4)));
        assert_eq!(CollusionChannel::minority(2), Err(Error::EvenCoalition(2)));
        assert!(CollusionChannel::minority(25).unwrap().is_symbol_symmetric());
    }

    #[test]
    fn coinflip_examples() {
        assert_eq!(th(CollusionChannel::coinflip(3)), vec![0.0, 0.5, 0.5, 1.0]);
        assert_eq!(th(CollusionChannel::coinflip(1)), vec![0.0, 1.0]);
        for c in 1..30 {
            assert!(CollusionChannel::coinflip(c).unwrap().is_symbol_symmetric());
        }
    }

    #[test]
    fn noisy_models() {
        assert_eq!(th(CollusionChannel::additive(2, 0.1)), vec![0.1, 1.0, 1.0]);
        assert_eq!(
            CollusionChannel::additive(4, 0.0),
            CollusionChannel::all1(4)
        );
        assert_eq!(CollusionChannel::additive(2, 1.0), Err(Error::BadRate(1.0)));
        assert!(CollusionChannel::additive(2, f64::NAN).is_err());
        assert!(!CollusionChannel::additive(3, 0.1).unwrap().satisfies_marking());

        assert_eq!(th(CollusionChannel::dilution(2, 0.5)), vec![0.0, 0.5, 0.75]);
        assert_eq!(
            CollusionChannel::dilution(5, 0.0),
            CollusionChannel::all1(5)
        );
        let d = th(CollusionChannel::dilution(3, 0.1));
        for (got, want) in d.iter().zip([0.0, 0.9, 0.99, 0.999]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(CollusionChannel::dilution(3, -0.1), Err(Error::BadRate(-0.1)));
    }

    #[test]
    fn threshold_models() {
        assert_eq!(
            th(CollusionChannel::threshold(4, 2)),
            vec![0.0, 0.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(
            CollusionChannel::threshold(7, 1),
            CollusionChannel::all1(7)
        );
        assert_eq!(
            CollusionChannel::threshold(5, 3),
            CollusionChannel::majority(5)
        );
        assert!(CollusionChannel::threshold(4, 0).is_err());
        assert!(CollusionChannel::threshold(4, 5).is_err());

        assert_eq!(
            th(CollusionChannel::threshold_gap(4, 1, 3, GapKind::Interleaving)),
            vec![0.0, 0.0, 0.5, 1.0, 1.0]
        );
        for c in 1..20 {
            assert_eq!(
                CollusionChannel::threshold_gap(c, 0, c, GapKind::Coin),
                CollusionChannel::coinflip(c)
            );
            assert_eq!(
                CollusionChannel::threshold_gap(c, 0, c, GapKind::Interleaving),
                CollusionChannel::interleaving(c)
            );
            for u in 1..=c {
                for gap in [GapKind::Coin, GapKind::Interleaving] {
                    assert_eq!(
                        CollusionChannel::threshold_gap(c, u - 1, u, gap),
                        CollusionChannel::threshold(c, u)
                    );
                }
            }
        }
        for c in (1..40).step_by(2) {
            assert_eq!(
                CollusionChannel::majority(c),
                CollusionChannel::threshold(c, (c + 1) / 2)
            );
        }
        assert!(CollusionChannel::threshold_gap(4, 3, 3, GapKind::Coin).is_err());
        assert!(CollusionChannel::threshold_gap(4, 1, 5, GapKind::Coin).is_err());
    }

    #[test]
    fn custom_channels() {
        let ch = CollusionChannel::new(vec![0.0, 0.3, 1.0]).unwrap();
        assert_eq!(ch.coalition_size(), 2);
        assert_eq!(ch.theta(), &[0.0, 0.3, 1.0]);
        assert!(matches!(
            CollusionChannel::new(vec![0.2]),
            Err(Error::BadProbability(_))
        ));
        assert!(matches!(
            CollusionChannel::new(vec![0.0, 1.5, 1.0]),
            Err(Error::BadProbability(_))
        ));
        assert!(CollusionChannel::new(vec![0.0, f64::NAN]).is_err());
        assert_eq!(CollusionChannel::all1(0), Err(Error::EmptyCoalition));
    }

    #[test]
    fn predicates() {
        let ch = CollusionChannel::new(vec![0.0, 0.3, 1.0]).unwrap();
        assert!(ch.satisfies_marking());
        assert!(!ch.is_deterministic());
        assert!(!ch.is_symbol_symmetric());
        assert!(CollusionChannel::new(vec![0.4; 4]).unwrap().is_constant());
        assert!(!CollusionChannel::all1(3).unwrap().is_constant());
    }
}
