//! Batch experiments: threshold grids, sweeps over `c`, and arcsine-averaged
//! sweeps. Work is spread over the current rayon pool; results come back in a
//! fixed order regardless of how many threads ran them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use fpcap_core::channels::{CollusionChannel, GapKind};
use fpcap_core::optimize::{maximize_payoff, universal_capacity, DecoderKind, OptimizerOptions};

use crate::channel_spec::ChannelSpec;

/// One `(l, u)` entry of a [`GridScan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub l: usize,
    pub u: usize,
    /// `c` times the capacity.
    pub scaled_capacity: f64,
}

/// Scaled capacities of every threshold-gap model `0 <= l < u <= c`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScan {
    pub c: usize,
    pub decoder: DecoderKind,
    pub gap: GapKind,
    pub options: OptimizerOptions,
    /// Ordered by `l`, then `u`.
    pub cells: Vec<GridCell>,
}

impl GridScan {
    pub fn get(&self, l: usize, u: usize) -> Option<f64> {
        self.cells
            .binary_search_by(|x| (x.l, x.u).cmp(&(l, u)))
            .ok()
            .map(|i| self.cells[i].scaled_capacity)
    }
}

/// Every `(l, u)` with `0 <= l < u <= c`, in grid order.
pub fn grid_pairs(c: usize) -> Vec<(usize, usize)> {
    (0..c)
        .flat_map(|l| (l + 1..=c).map(move |u| (l, u)))
        .collect()
}

pub fn threshold_grid(
    c: usize,
    gap: GapKind,
    decoder: DecoderKind,
    options: &OptimizerOptions,
) -> fpcap_core::Result<GridScan> {
    if c < 2 {
        return Err(fpcap_core::Error::BadThreshold {
            lower: 0,
            upper: c,
            c,
        });
    }
    options.validate()?;
    let cells = grid_pairs(c)
        .into_par_iter()
        .map(|(l, u)| {
            let channel = CollusionChannel::threshold_gap(c, l, u, gap)?;
            let r = maximize_payoff(&channel, decoder, options)?;
            Ok(GridCell {
                l,
                u,
                scaled_capacity: r.capacity * c as f64,
            })
        })
        .collect::<fpcap_core::Result<Vec<_>>>()?;
    Ok(GridScan {
        c,
        decoder,
        gap,
        options: *options,
        cells,
    })
}

/// Power of `c` applied to a capacity in sweep output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    C,
    C2,
    C32,
}

impl Scaling {
    pub fn factor(self, c: usize) -> f64 {
        let c = c as f64;
        match self {
            Scaling::C => c,
            Scaling::C2 => c * c,
            Scaling::C32 => c * c.sqrt(),
        }
    }
}

/// One coalition size of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c: usize,
    pub model: String,
    pub decoder: String,
    pub capacity: f64,
    /// Empty for arcsine-averaged rows, which have no maximizer.
    pub p_star: Option<f64>,
    pub scaled_capacity: f64,
}

/// Capacity of `spec` at each coalition size.
pub fn sweep_c(
    spec: &ChannelSpec,
    decoder: DecoderKind,
    c_values: &[usize],
    scaling: Scaling,
    options: &OptimizerOptions,
) -> fpcap_core::Result<Vec<SweepRow>> {
    let model = spec.to_string();
    c_values
        .par_iter()
        .map(|&c| {
            let r = maximize_payoff(&spec.build(c)?, decoder, options)?;
            Ok(SweepRow {
                c,
                model: model.clone(),
                decoder: decoder.to_string(),
                capacity: r.capacity,
                p_star: Some(r.p_star.get()),
                scaled_capacity: r.capacity * scaling.factor(c),
            })
        })
        .collect()
}

/// Arcsine-averaged payoff for each spec and size. Rows carry `c^(3/2)` times
/// the value, or `c^2` for interleaving. Output is spec-major.
pub fn universal_sweep(
    specs: &[ChannelSpec],
    decoder: DecoderKind,
    c_values: &[usize],
    nodes: usize,
) -> fpcap_core::Result<Vec<SweepRow>> {
    let jobs: Vec<(&ChannelSpec, usize)> = specs
        .iter()
        .flat_map(|s| c_values.iter().map(move |&c| (s, c)))
        .collect();
    jobs.into_par_iter()
        .map(|(spec, c)| {
            let value = universal_capacity(&spec.build(c)?, decoder, nodes)?;
            let scaling = match spec {
                ChannelSpec::Interleaving => Scaling::C2,
                _ => Scaling::C32,
            };
            Ok(SweepRow {
                c,
                model: spec.to_string(),
                decoder: decoder.to_string(),
                capacity: value,
                p_star: None,
                scaled_capacity: value * scaling.factor(c),
            })
        })
        .collect()
}
