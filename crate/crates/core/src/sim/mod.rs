//! Deterministic synthetic enterprise generator.
//!
//! Produces panels with the nine-block structure, the six control options,
//! seasonal logistics gating, credit amortization, and the sanctions and
//! seasonal-inflation shocks, at configurable scale. Everything is a pure
//! function of (option, config); see [`rng`] for the bit-level randomness
//! contract.

mod blocks;
mod environment;
mod options;
mod rng;
mod scenario_file;

pub use blocks::{block_allocation, describe_blocks, BlockInfo, BLOCK_WEIGHTS};
pub use environment::{month_of_year, navigation_open, EnvironmentTimeline, SANCTION_WINDOW};
pub use options::{builtin_options, ControlOption};
pub use scenario_file::{parse_scenario_file, ScenarioOverrides};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::panel::{Block, ParameterMeta, TimeSeriesPanel};

use rng::{standard_normal, substream, LANE_NOISE, LANE_SANCTION, LANE_SEASONAL};

/// Source ticks of the seasonal-inflation factor. Chosen so the depth-12
/// trailing indicator registers the factor during periods 43–50 and 56–62,
/// where the index reports seasonal influence, while the windows anchored
/// at 51–55 stay free of source ticks.
pub const SEASONAL_SOURCE_WINDOWS: [(i64, i64); 2] = [(32, 38), (55, 62)];

/// Scale and reproducibility knobs for the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Panel width, >= 20.
    pub n_parameters: usize,
    /// Number of ticks, >= products_sale_start of the chosen option.
    pub horizon_t: i64,
    pub seed: u64,
    /// Relative sd of idiosyncratic noise, in (0, 0.15].
    pub noise_scale: f64,
    /// Sanctions shock strength: one latent sd scales affected columns by
    /// this factor.
    pub sanction_amplitude: f64,
    /// Seasonal-inflation factor strength, same convention.
    pub seasonal_amplitude: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_parameters: 200,
            horizon_t: 62,
            seed: 42,
            noise_scale: 0.05,
            sanction_amplitude: 1.5,
            seasonal_amplitude: 1.2,
        }
    }
}

impl SimConfig {
    pub fn validate(&self, option: &ControlOption) -> Result<()> {
        if self.n_parameters < 20 {
            return Err(Error::Config(format!(
                "n_parameters must be >= 20, got {}",
                self.n_parameters
            )));
        }
        if self.horizon_t < option.products_sale_start {
            return Err(Error::Config(format!(
                "horizon < products_sale_start ({})",
                option.products_sale_start
            )));
        }
        if !(self.noise_scale > 0.0 && self.noise_scale <= 0.15) {
            return Err(Error::Config(format!(
                "noise_scale must lie in (0, 0.15], got {}",
                self.noise_scale
            )));
        }
        for (name, amp) in [
            ("sanction_amplitude", self.sanction_amplitude),
            ("seasonal_amplitude", self.seasonal_amplitude),
        ] {
            if !(1.0..=10.0).contains(&amp) {
                return Err(Error::Config(format!(
                    "{name} must lie in [1, 10], got {amp}"
                )));
            }
        }
        Ok(())
    }
}

/// Positive common factor with relative amplitude (amp − 1) per latent sd:
/// 1 + x + x²/2 with x = (amp − 1)·latent. Minimum value 0.5 for any amp.
fn common_factor(amp: f64, latent: f64) -> f64 {
    let x = (amp - 1.0) * latent;
    1.0 + x + 0.5 * x * x
}

fn in_seasonal_source(t: i64) -> bool {
    SEASONAL_SOURCE_WINDOWS.iter().any(|&(a, b)| (a..=b).contains(&t))
}

/// Generate the panel for one control option. Pure in (option, config);
/// column generation parallelizes over per-column substreams, so the output
/// is independent of thread count.
pub fn simulate(option: &ControlOption, config: &SimConfig) -> Result<TimeSeriesPanel> {
    option.validate()?;
    config.validate(option)?;

    let t_len = config.horizon_t as usize;
    let env = EnvironmentTimeline::build(option, config);

    // Common latent factors, one draw per tick from tick-keyed substreams.
    let sanctions_on = option.asset_offset_months > 0;
    let sanction_factor: Vec<f64> = (1..=config.horizon_t)
        .map(|t| {
            if sanctions_on && (SANCTION_WINDOW.0..=SANCTION_WINDOW.1).contains(&t) {
                let mut rng = substream(config.seed, LANE_SANCTION, t as u64);
                common_factor(config.sanction_amplitude, standard_normal(&mut rng))
            } else {
                1.0
            }
        })
        .collect();
    let seasonal_factor: Vec<f64> = (1..=config.horizon_t)
        .map(|t| {
            if in_seasonal_source(t) {
                let mut rng = substream(config.seed, LANE_SEASONAL, t as u64);
                common_factor(config.seasonal_amplitude, standard_normal(&mut rng))
            } else {
                1.0
            }
        })
        .collect();

    // Map global column index -> (block, local index).
    let alloc = block_allocation(config.n_parameters);
    let mut placements = Vec::with_capacity(config.n_parameters);
    for (b, &count) in alloc.iter().enumerate() {
        for j in 0..count {
            placements.push((Block::from_ordinal(b).unwrap(), j));
        }
    }

    let columns: Vec<(String, Block, Vec<f64>)> = placements
        .par_iter()
        .enumerate()
        .map(|(i, &(block, j))| {
            let (label, base) = blocks::column_base(option, config, &env, block, j, i);
            let mut noise = substream(config.seed, LANE_NOISE, i as u64);
            let seasonal = blocks::seasonal_block(block);
            let sanction = blocks::sanction_block(block);
            let mut series = Vec::with_capacity(t_len);
            for (p, b) in base.into_iter().enumerate() {
                let z = standard_normal(&mut noise);
                let mut v = b * (1.0 + config.noise_scale * z);
                if seasonal {
                    v *= seasonal_factor[p];
                }
                if sanction {
                    v *= sanction_factor[p];
                }
                series.push(v);
            }
            (label, block, series)
        })
        .collect();

    let meta = columns
        .iter()
        .enumerate()
        .map(|(i, (label, block, _))| ParameterMeta {
            index: i + 1,
            label: label.clone(),
            block: *block,
        })
        .collect();
    let values = columns.into_iter().map(|(_, _, series)| series).collect();
    let ticks = (1..=config.horizon_t).collect();
    TimeSeriesPanel::new(meta, ticks, values)
}
