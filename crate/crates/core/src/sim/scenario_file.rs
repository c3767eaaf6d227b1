//! Plain-text `key = value` scenario files. Keys match the SimConfig and
//! ControlOption field names exactly; anything else is a ConfigError.

use crate::error::{Error, Result};

use super::options::ControlOption;
use super::SimConfig;

/// Parsed overrides; unset keys leave the preset/default untouched.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioOverrides {
    pub id: Option<u32>,
    pub credit_share: Option<f64>,
    pub rate: Option<f64>,
    pub owner_share: Option<f64>,
    pub subsidy_share: Option<f64>,
    pub sawlog_sale_start: Option<i64>,
    pub products_sale_start: Option<i64>,
    pub asset_offset_months: Option<i64>,
    pub logging_volume: Option<f64>,
    pub n_parameters: Option<usize>,
    pub horizon_t: Option<i64>,
    pub seed: Option<u64>,
    pub noise_scale: Option<f64>,
    pub sanction_amplitude: Option<f64>,
    pub seasonal_amplitude: Option<f64>,
}

impl ScenarioOverrides {
    pub fn apply(&self, option: &mut ControlOption, config: &mut SimConfig) {
        macro_rules! set {
            ($target:expr, $field:ident) => {
                if let Some(v) = self.$field {
                    $target.$field = v;
                }
            };
        }
        set!(option, id);
        set!(option, credit_share);
        set!(option, rate);
        set!(option, owner_share);
        set!(option, subsidy_share);
        set!(option, sawlog_sale_start);
        set!(option, products_sale_start);
        set!(option, asset_offset_months);
        set!(option, logging_volume);
        set!(config, n_parameters);
        set!(config, seed);
        set!(config, noise_scale);
        set!(config, sanction_amplitude);
        set!(config, seasonal_amplitude);
        if let Some(v) = self.horizon_t {
            config.horizon_t = v;
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value \"{value}\" for key {key}")))
}

/// Parse the file. Blank lines and lines starting with `#` are ignored;
/// later assignments win.
pub fn parse_scenario_file(text: &str) -> Result<ScenarioOverrides> {
    let mut out = ScenarioOverrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value, got \"{raw}\"", idx + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "id" => out.id = Some(parse_value(key, value)?),
            "credit_share" => out.credit_share = Some(parse_value(key, value)?),
            "rate" => out.rate = Some(parse_value(key, value)?),
            "owner_share" => out.owner_share = Some(parse_value(key, value)?),
            "subsidy_share" => out.subsidy_share = Some(parse_value(key, value)?),
            "sawlog_sale_start" => out.sawlog_sale_start = Some(parse_value(key, value)?),
            "products_sale_start" => out.products_sale_start = Some(parse_value(key, value)?),
            "asset_offset_months" => out.asset_offset_months = Some(parse_value(key, value)?),
            "logging_volume" => out.logging_volume = Some(parse_value(key, value)?),
            "n_parameters" => out.n_parameters = Some(parse_value(key, value)?),
            "horizon_T" => out.horizon_t = Some(parse_value(key, value)?),
            "seed" => out.seed = Some(parse_value(key, value)?),
            "noise_scale" => out.noise_scale = Some(parse_value(key, value)?),
            "sanction_amplitude" => out.sanction_amplitude = Some(parse_value(key, value)?),
            "seasonal_amplitude" => out.seasonal_amplitude = Some(parse_value(key, value)?),
            other => {
                return Err(Error::Config(format!("unknown key \"{other}\" in scenario file")))
            }
        }
    }
    Ok(out)
}
