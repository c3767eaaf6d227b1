//! Per-parameter stress indicators G_i(t) and the integral indicator G.
//!
//! G_i(t) sums |r_ij(t)| over partners j whose correlation magnitude clears
//! the critical value; G(t) = Σ_i G_i(t); the total is reported raw and under
//! the per-tick and per-cell normalizations.

use rayon::prelude::*;

use crate::correlation::{standardized_pair_r, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::panel::{window_slice, TimeSeriesPanel};
use crate::threshold::{critical_r, ThresholdSpec};

/// Normalization modes for the integral indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalizationMode {
    Raw,
    PerTick,
    PerCell,
}

impl NormalizationMode {
    pub fn name(&self) -> &'static str {
        match self {
            NormalizationMode::Raw => "raw",
            NormalizationMode::PerTick => "per_tick",
            NormalizationMode::PerCell => "per_cell",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(NormalizationMode::Raw),
            "per_tick" => Ok(NormalizationMode::PerTick),
            "per_cell" => Ok(NormalizationMode::PerCell),
            other => Err(Error::Config(format!(
                "unknown normalization mode \"{other}\" (raw|per_tick|per_cell)"
            ))),
        }
    }
}

/// Integral indicator totals under the three normalization modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GTotal {
    pub raw: f64,
    pub per_tick: f64,
    pub per_cell: f64,
}

impl GTotal {
    pub fn get(&self, mode: NormalizationMode) -> f64 {
        match mode {
            NormalizationMode::Raw => self.raw,
            NormalizationMode::PerTick => self.per_tick,
            NormalizationMode::PerCell => self.per_cell,
        }
    }
}

/// The G_i(t) surface and its aggregates over every analyzable tick.
#[derive(Debug, Clone)]
pub struct IndicatorResult {
    n: usize,
    k: usize,
    analyzed_ticks: Vec<i64>,
    /// `gi[p][i]` = G_i at the p-th analyzed tick.
    gi: Vec<Vec<f64>>,
    g_per_tick: Vec<f64>,
    threshold_used: Vec<f64>,
    g_total: GTotal,
}

impl IndicatorResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn analyzed_ticks(&self) -> &[i64] {
        &self.analyzed_ticks
    }

    pub fn ticks_analyzed(&self) -> usize {
        self.analyzed_ticks.len()
    }

    /// G_i values at the p-th analyzed tick.
    pub fn gi_row(&self, p: usize) -> &[f64] {
        &self.gi[p]
    }

    pub fn gi_at(&self, tick: i64, i: usize) -> Option<f64> {
        let p = self.analyzed_ticks.iter().position(|&t| t == tick)?;
        self.gi[p].get(i).copied()
    }

    pub fn g_per_tick(&self) -> &[f64] {
        &self.g_per_tick
    }

    pub fn g_at(&self, tick: i64) -> Option<f64> {
        let p = self.analyzed_ticks.iter().position(|&t| t == tick)?;
        Some(self.g_per_tick[p])
    }

    /// Realized r_sign per analyzed tick.
    pub fn threshold_used(&self) -> &[f64] {
        &self.threshold_used
    }

    pub fn g_total(&self) -> GTotal {
        self.g_total
    }
}

/// G_i for parameter i (0-based): the sum of |r_ij| over j ≠ i with
/// |r_ij| ≥ r_sign, skipping degenerate partners. Degenerate i yields 0.
pub fn weight_indicator(matrix: &CorrelationMatrix, i: usize, r_sign: f64) -> Result<f64> {
    let n = matrix.n();
    if i >= n {
        return Err(Error::Index { index: i, n });
    }
    if matrix.degenerate()[i] {
        return Ok(0.0);
    }
    let mut g = 0.0;
    for j in 0..n {
        if j == i || matrix.degenerate()[j] {
            continue;
        }
        let r = matrix.get(i, j).abs();
        if r >= r_sign {
            g += r;
        }
    }
    Ok(g)
}

/// G_i for every parameter of one standardized window, without materializing
/// the full n×n matrix. Pair order is fixed (i < j ascending), so results are
/// identical to the matrix route.
fn gi_for_window(window: &crate::panel::WindowMatrix, r_sign: f64) -> Vec<f64> {
    let n = window.n();
    let k = window.depth_k();
    let degenerate = window.degenerate();
    let mut gi = vec![0.0; n];
    for i in 0..n {
        if degenerate[i] {
            continue;
        }
        let col_i = window.column(i);
        for j in (i + 1)..n {
            if degenerate[j] {
                continue;
            }
            let r = standardized_pair_r(col_i, window.column(j), k).abs();
            if r >= r_sign {
                gi[i] += r;
                gi[j] += r;
            }
        }
    }
    gi
}

/// Compute the indicator surface for every tick with full history.
///
/// Ticks with insufficient history are omitted from all aggregates. Per-tick
/// work runs in parallel; the outputs are identical to sequential execution
/// because each tick is reduced in fixed order and the cross-tick aggregation
/// runs in ascending tick order.
pub fn indicator_series(
    panel: &TimeSeriesPanel,
    k: usize,
    spec: &ThresholdSpec,
) -> Result<IndicatorResult> {
    if k < 3 {
        return Err(Error::InvalidDepth(k));
    }
    if panel.len() < k + 1 {
        return Err(Error::InsufficientHistory {
            anchor: panel.first_tick() + k as i64,
            depth: k,
            from: panel.first_tick(),
            to: panel.last_tick(),
        });
    }
    let r_sign = critical_r(k, spec)?;
    let first_anchor = panel.first_tick() + k as i64;
    let anchors: Vec<i64> = (first_anchor..=panel.last_tick()).collect();

    let gi: Vec<Vec<f64>> = anchors
        .par_iter()
        .map(|&t| {
            let window = window_slice(panel, t, k)?.standardize();
            Ok(gi_for_window(&window, r_sign))
        })
        .collect::<Result<_>>()?;

    let g_per_tick: Vec<f64> = gi.iter().map(|row| row.iter().sum()).collect();
    let raw: f64 = g_per_tick.iter().sum();
    let t_analyzed = anchors.len() as f64;
    let n = panel.n();
    let g_total = GTotal {
        raw,
        per_tick: raw / t_analyzed,
        per_cell: raw / (n as f64 * t_analyzed),
    };
    Ok(IndicatorResult {
        n,
        k,
        threshold_used: vec![r_sign; anchors.len()],
        analyzed_ticks: anchors,
        gi,
        g_per_tick,
        g_total,
    })
}
