//! External-environment timeline: price/index series, shock flags, and the
//! river navigation season.

use super::options::ControlOption;
use super::rng::{standard_normal, substream, LANE_ENV};
use super::SimConfig;

pub const ENV_SERIES_NAMES: [&str; 9] = [
    "exchange_rate",
    "tax_rate",
    "fuel_price",
    "electricity_tariff",
    "inflation_rate",
    "raw_material_price",
    "product_price",
    "equipment_price",
    "productivity_index",
];

/// Ticks during which high-tech equipment sanctions bite (options with an
/// asset offset).
pub const SANCTION_WINDOW: (i64, i64) = (32, 38);

/// Per-tick environment state over ticks 1..=T. Vectors are indexed by
/// tick − 1.
#[derive(Debug, Clone)]
pub struct EnvironmentTimeline {
    pub exchange_rate: Vec<f64>,
    pub tax_rate: Vec<f64>,
    pub fuel_price: Vec<f64>,
    pub electricity_tariff: Vec<f64>,
    pub inflation_rate: Vec<f64>,
    pub raw_material_price: Vec<f64>,
    pub product_price: Vec<f64>,
    pub equipment_price: Vec<f64>,
    pub productivity_index: Vec<f64>,
    pub sanctions_active: Vec<bool>,
    pub export_ban_active: Vec<bool>,
    pub river_navigation_open: Vec<bool>,
}

/// Tick 1 = January; navigation is open May through September.
pub fn month_of_year(t: i64) -> i64 {
    (t - 1).rem_euclid(12) + 1
}

pub fn navigation_open(t: i64) -> bool {
    (5..=9).contains(&month_of_year(t))
}

impl EnvironmentTimeline {
    pub fn build(option: &ControlOption, config: &SimConfig) -> EnvironmentTimeline {
        let t_len = config.horizon_t as usize;
        let seed = config.seed;

        // Per-series jitter streams; inflation (series 4) drives price drift.
        let mut streams: Vec<_> = (0..9).map(|s| substream(seed, LANE_ENV, s as u64)).collect();

        let mut inflation_rate = Vec::with_capacity(t_len);
        for _ in 0..t_len {
            // 0.4 %/month with mild variation, always positive
            inflation_rate.push(0.004 * (1.0 + 0.25 * standard_normal(&mut streams[4])));
        }

        // Cumulative price paths: p(t+1) = p(t) * (1 + inflation + jitter).
        let mut price_path = |series: usize, start: f64, extra_drift: f64| -> Vec<f64> {
            let mut out = Vec::with_capacity(t_len);
            let mut level = start;
            for infl in &inflation_rate {
                out.push(level);
                let jitter = 0.001 * standard_normal(&mut streams[series]);
                level *= 1.0 + infl + extra_drift + jitter;
            }
            out
        };

        let exchange_rate = price_path(0, 1.0, -0.001);
        let fuel_price = price_path(2, 45.0, 0.0);
        let electricity_tariff = price_path(3, 3.5, 0.0);
        let raw_material_price = price_path(5, 2.4, 0.0);
        let product_price = price_path(6, 12.0, 0.0);
        let equipment_price = price_path(7, 100.0, 0.0);

        let tax_rate = vec![0.20; t_len];
        let mut productivity_index = Vec::with_capacity(t_len);
        let mut level = 1.0;
        for _ in 0..t_len {
            productivity_index.push(level);
            level *= 1.0 + 0.0005 + 0.0005 * standard_normal(&mut streams[8]);
        }

        let sanctions_active = (1..=config.horizon_t)
            .map(|t| {
                option.asset_offset_months > 0 && (SANCTION_WINDOW.0..=SANCTION_WINDOW.1).contains(&t)
            })
            .collect();
        let export_ban_active = (1..=config.horizon_t).map(|_| option.id >= 2).collect();
        let river_navigation_open = (1..=config.horizon_t).map(navigation_open).collect();

        EnvironmentTimeline {
            exchange_rate,
            tax_rate,
            fuel_price,
            electricity_tariff,
            inflation_rate,
            raw_material_price,
            product_price,
            equipment_price,
            productivity_index,
            sanctions_active,
            export_ban_active,
            river_navigation_open,
        }
    }

    /// Series by its position in [`ENV_SERIES_NAMES`], value at `tick`.
    pub fn series_value(&self, series: usize, tick: i64) -> f64 {
        let p = (tick - 1) as usize;
        match series {
            0 => self.exchange_rate[p],
            1 => self.tax_rate[p],
            2 => self.fuel_price[p],
            3 => self.electricity_tariff[p],
            4 => self.inflation_rate[p],
            5 => self.raw_material_price[p],
            6 => self.product_price[p],
            7 => self.equipment_price[p],
            8 => self.productivity_index[p],
            _ => unreachable!("9 environment series"),
        }
    }
}
