//! Capacity search over the bias `p`.
//!
//! Payoffs are multimodal in `p` for several channels (minority voting,
//! threshold gaps), so the search samples a grid, brackets every local maximum
//! and refines each bracket by golden-section search. For all-1-like channels
//! the optimum sits at `p = Theta(1/c)`, below the resolution of a uniform grid
//! once `c` is large; the optional augmentation adds samples on that scale.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::channels::CollusionChannel;
use crate::math::{sin, LN_2};
use crate::payoff::{joint_deficit, output_probability, payoff, BiasPoint};
use crate::{Error, Result};

pub use crate::payoff::DecoderKind;

/// Tuning knobs for [`maximize_payoff`] and [`solve_a_half`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Number of uniformly spaced interior samples, `p_i = i / (n + 1)`.
    pub grid_points: usize,
    /// Width of the final bracket in `p`.
    pub refine_tolerance_p: f64,
    /// Local maxima within this many bits of the best one are reported as ties.
    pub near_optimal_band: f64,
    /// Add samples at `k ln2 / (4c)` and `1 - k ln2 / (4c)` for `k = 1..=32`.
    pub small_p_augmentation: bool,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            grid_points: 1024,
            refine_tolerance_p: 1e-10,
            near_optimal_band: 1e-9,
            small_p_augmentation: true,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 16 {
            return Err(Error::BadOptions("grid_points must be at least 16"));
        }
        if !(self.refine_tolerance_p > 0.0) {
            return Err(Error::BadOptions("refine_tolerance_p must be positive"));
        }
        if !(self.near_optimal_band > 0.0) {
            return Err(Error::BadOptions("near_optimal_band must be positive"));
        }
        Ok(())
    }
}

/// A local maximum of the payoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMax {
    pub p: f64,
    pub bits: f64,
}

/// Outcome of [`maximize_payoff`].
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    /// Largest payoff found, in bits.
    pub capacity: f64,
    /// Smallest bias whose payoff is within the near-optimal band of `capacity`.
    pub p_star: BiasPoint,
    /// Every refined local maximum inside the band, ascending in `p`.
    pub local_maxima: Vec<LocalMax>,
    /// Number of payoff evaluations spent.
    pub evaluations: usize,
    /// The `p` tolerance used for refinement.
    pub tolerance_used: f64,
    /// Set when the payoff is identically zero (for instance a constant `theta`).
    /// `capacity` is then 0 and `p_star` is 1/2.
    pub degenerate: bool,
}

/// The sample points used by the optimizer, ascending, all inside `(0, 1)`.
pub fn sample_grid(c: usize, options: &OptimizerOptions) -> Vec<f64> {
    let n = options.grid_points;
    let mut grid: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
    if options.small_p_augmentation {
        let step = LN_2 / (4.0 * c as f64);
        for k in 1..=32 {
            let p = k as f64 * step;
            if p < 0.5 {
                grid.push(p);
                grid.push(1.0 - p);
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Objective that golden-section search maximizes. It is a monotone transform
/// of the payoff, so both share their maximizers.
fn objective(channel: &CollusionChannel, p: BiasPoint, decoder: DecoderKind) -> f64 {
    match decoder {
        DecoderKind::Simple => payoff(channel, p, decoder),
        DecoderKind::Joint => -joint_deficit(channel, p),
    }
}

/// Objective values this close are indistinguishable from rounding noise.
const SYMMETRY_SLACK: f64 = 1e-15;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` over `(lo, hi)`. Returns the best point
/// seen and the number of evaluations.
fn golden_section(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    mut f: impl FnMut(f64) -> f64,
) -> (f64, f64, usize) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evals += 1;
        // Once the bracket collapses onto adjacent floats nothing moves anymore.
        if x1 >= x2 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    }
}

/// Simple or joint capacity `max_p I(p)` of `channel`.
pub fn maximize_payoff(
    channel: &CollusionChannel,
    decoder: DecoderKind,
    options: &OptimizerOptions,
) -> Result<CapacityResult> {
    options.validate()?;
    let tol = options.refine_tolerance_p;
    let half = BiasPoint::new(0.5)?;

    let degenerate = |evaluations| CapacityResult {
        capacity: 0.0,
        p_star: half,
        local_maxima: alloc::vec![LocalMax { p: 0.5, bits: 0.0 }],
        evaluations,
        tolerance_used: tol,
        degenerate: true,
    };
    if channel.is_constant() {
        return Ok(degenerate(0));
    }

    // For a deterministic channel the joint payoff is h(a) / c, so its
    // maximizers are exactly the roots of a(p) = 1/2. Solving for those is far
    // better conditioned than searching the payoff, whose plateau is flat to
    // second order in a - 1/2.
    if decoder == DecoderKind::Joint && channel.is_deterministic() && channel.satisfies_marking() {
        let (roots, evaluations) = a_half_roots(channel, options);
        let maxima = roots
            .into_iter()
            .map(|p| LocalMax {
                p,
                bits: payoff(channel, BiasPoint(p), decoder),
            })
            .collect::<Vec<_>>();
        let evaluations = evaluations + maxima.len();
        return Ok(finish(maxima, evaluations, options));
    }

    let symmetric = channel.is_symbol_symmetric();
    let grid = sample_grid(channel.coalition_size(), options);
    let values: Vec<f64> = grid
        .iter()
        .map(|&p| payoff(channel, BiasPoint(p), decoder))
        .collect();
    let mut evaluations = grid.len();
    if values.iter().all(|&v| v == 0.0) {
        return Ok(degenerate(evaluations));
    }

    // Brackets are picked on the refinement objective: for the joint payoff it
    // resolves plateaus where the value in bits is flat to rounding and would
    // show spurious local maxima.
    let sharp: Vec<f64> = match decoder {
        DecoderKind::Simple => values.clone(),
        DecoderKind::Joint => {
            evaluations += grid.len();
            grid.iter()
                .map(|&p| objective(channel, BiasPoint(p), decoder))
                .collect()
        }
    };

    let last = grid.len() - 1;
    let mut maxima: Vec<LocalMax> = Vec::new();
    for i in 0..=last {
        let rises = i == 0 || sharp[i] > sharp[i - 1];
        let holds = i == last || sharp[i] >= sharp[i + 1];
        if !(rises && holds) {
            continue;
        }
        let lo = if i == 0 { 0.0 } else { grid[i - 1] };
        let hi = if i == last { 1.0 } else { grid[i + 1] };
        let (mut p, f_p, evals) = golden_section(lo, hi, tol, |p| {
            objective(channel, BiasPoint(p), decoder)
        });
        evaluations += evals;
        // A symmetric channel is stationary at 1/2. When the payoff is flat
        // there to rounding level, golden section wanders off by ~eps^(1/3);
        // the exact point is known, so use it unless the search clearly beats it.
        if symmetric && lo < 0.5 && 0.5 < hi {
            evaluations += 1;
            if f_p <= objective(channel, half, decoder) + SYMMETRY_SLACK {
                p = 0.5;
            }
        }
        let bits = payoff(channel, BiasPoint(p), decoder);
        evaluations += 1;
        // Never report less than the grid sample that seeded the bracket.
        let best = if bits >= values[i] {
            LocalMax { p, bits }
        } else {
            LocalMax {
                p: grid[i],
                bits: values[i],
            }
        };
        maxima.push(best);
    }
    // The two orderings can disagree by an ulp; the best sample must survive.
    let (top, &top_bits) = values
        .iter()
        .enumerate()
        .fold((0, &values[0]), |b, (i, v)| if *v > *b.1 { (i, v) } else { b });
    if maxima.iter().all(|m| m.bits < top_bits) {
        maxima.push(LocalMax {
            p: grid[top],
            bits: top_bits,
        });
    }

    Ok(finish(maxima, evaluations, options))
}

/// Global maximum and near-optimal tie set of the refined local maxima.
fn finish(maxima: Vec<LocalMax>, evaluations: usize, options: &OptimizerOptions) -> CapacityResult {
    let tol = options.refine_tolerance_p;
    let capacity = maxima
        .iter()
        .map(|m| m.bits)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut ties: Vec<LocalMax> = maxima
        .into_iter()
        .filter(|m| capacity - m.bits <= options.near_optimal_band)
        .collect();
    ties.sort_by(|x, y| x.p.total_cmp(&y.p));
    ties.dedup_by(|x, y| (x.p - y.p).abs() <= 2.0 * tol);

    CapacityResult {
        capacity,
        p_star: BiasPoint(ties[0].p),
        local_maxima: ties,
        evaluations,
        tolerance_used: tol,
        degenerate: false,
    }
}

/// All biases with `a(p) = 1/2`, ascending.
///
/// For deterministic channels that satisfy the marking assumption these are
/// exactly the joint-capacity maximizers. Roots are bracketed by sign changes
/// on the optimizer grid (plus the endpoints, where `a(0) = 0` and `a(1) = 1`)
/// and bisected to `refine_tolerance_p`.
pub fn solve_a_half(
    channel: &CollusionChannel,
    options: &OptimizerOptions,
) -> Result<Vec<BiasPoint>> {
    options.validate()?;
    if !channel.satisfies_marking() {
        return Err(Error::MarkingRequired);
    }
    let (roots, _) = a_half_roots(channel, options);
    Ok(roots.into_iter().map(BiasPoint).collect())
}

/// Roots of `a(p) = 1/2` for a marking channel, with the evaluation count.
fn a_half_roots(channel: &CollusionChannel, options: &OptimizerOptions) -> (Vec<f64>, usize) {
    // a - 1/2, evaluated from whichever tail is accurate.
    let gap = |p: f64| {
        let (a, not_a) = output_probability(channel, BiasPoint(p));
        if a < 0.5 {
            a - 0.5
        } else {
            0.5 - not_a
        }
    };
    let mut evaluations = 0;
    let mut points = alloc::vec![(0.0, -0.5)];
    points.extend(
        sample_grid(channel.coalition_size(), options)
            .into_iter()
            .map(|p| (p, gap(p))),
    );
    points.push((1.0, 0.5));
    evaluations += points.len() - 2;
    // Symmetric channels have a(1/2) = 1/2 exactly. The root can be of odd
    // order above one, where the sign of the computed gap is pure noise.
    if channel.is_symbol_symmetric() {
        points.retain(|&(p, _)| p != 0.5);
        let at = points.partition_point(|&(p, _)| p < 0.5);
        points.insert(at, (0.5, 0.0));
    }

    let mut roots = Vec::new();
    for w in points.windows(2) {
        let ((mut lo, g_lo), (mut hi, g_hi)) = (w[0], w[1]);
        if g_lo == 0.0 {
            roots.push(lo);
            continue;
        }
        if g_lo.signum() == g_hi.signum() || g_hi == 0.0 {
            continue;
        }
        while hi - lo > options.refine_tolerance_p {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let g = gap(mid);
            evaluations += 1;
            if g == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if g.signum() == g_lo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    (roots, evaluations)
}

/// Default node count for [`universal_capacity`].
pub const DEFAULT_UNIVERSAL_NODES: usize = 256;

/// Payoff averaged over the arcsine bias density `1 / (pi sqrt(p (1 - p)))`.
///
/// Uses `node_count`-point Gauss-Chebyshev quadrature, which absorbs the
/// density's endpoint singularities exactly: nodes are
/// `p_k = (1 - cos(pi (2k - 1) / (2N))) / 2`, all with weight `1/N`.
pub fn universal_capacity(
    channel: &CollusionChannel,
    decoder: DecoderKind,
    node_count: usize,
) -> Result<f64> {
    if node_count < 8 {
        return Err(Error::BadOptions("node_count must be at least 8"));
    }
    if channel.is_constant() {
        return Ok(0.0);
    }
    let n = node_count as f64;
    let total: f64 = (1..=node_count)
        .map(|k| {
            let s = sin(PI * (2 * k - 1) as f64 / (4.0 * n));
            payoff(channel, BiasPoint(s * s), decoder)
        })
        .sum();
    Ok(total / n)
}
