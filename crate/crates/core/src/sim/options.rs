//! The six built-in enterprise control options.

use crate::error::{Error, Result};

/// One enterprise-development scenario preset.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlOption {
    pub id: u32,
    /// Credit as % of project cost.
    pub credit_share: f64,
    /// Annual % rate on the credit.
    pub rate: f64,
    /// Owner investment as % of project cost.
    pub owner_share: f64,
    /// % of the legally required subsidies actually granted.
    pub subsidy_share: f64,
    /// Month sawlog sales start.
    pub sawlog_sale_start: i64,
    /// Month deep-processing product sales start.
    pub products_sale_start: i64,
    /// Offset of fixed-asset purchases from the original date, months.
    pub asset_offset_months: i64,
    /// Logging volume, thousand m³ per year.
    pub logging_volume: f64,
}

impl ControlOption {
    pub fn validate(&self) -> Result<()> {
        if self.credit_share < 0.0
            || self.rate < 0.0
            || self.owner_share < 0.0
            || self.subsidy_share < 0.0
        {
            return Err(Error::Config("percentages must be >= 0".into()));
        }
        if self.sawlog_sale_start < 1 || self.products_sale_start < 1 {
            return Err(Error::Config("sale start months must be >= 1".into()));
        }
        if self.asset_offset_months < 0 {
            return Err(Error::Config("asset_offset_months must be >= 0".into()));
        }
        if self.logging_volume <= 0.0 {
            return Err(Error::Config("logging_volume must be > 0".into()));
        }
        Ok(())
    }

    /// Month fixed assets are purchased: the original date (month 1) shifted
    /// by the offset, i.e. max(1, offset).
    pub fn asset_month(&self) -> i64 {
        self.asset_offset_months.max(1)
    }

    pub fn builtin(id: u32) -> Option<ControlOption> {
        builtin_options().into_iter().find(|o| o.id == id)
    }
}

/// The six control options exactly as published.
pub fn builtin_options() -> Vec<ControlOption> {
    let base = ControlOption {
        id: 1,
        credit_share: 100.0,
        rate: 10.0,
        owner_share: 0.0,
        subsidy_share: 33.0,
        sawlog_sale_start: 5,
        products_sale_start: 21,
        asset_offset_months: 0,
        logging_volume: 800.0,
    };
    let second = ControlOption {
        id: 2,
        credit_share: 63.0,
        owner_share: 37.0,
        subsidy_share: 100.0,
        sawlog_sale_start: 10,
        ..base.clone()
    };
    let third = ControlOption { id: 3, asset_offset_months: 5, ..second.clone() };
    let fourth = ControlOption {
        id: 4,
        credit_share: 126.0,
        rate: 13.0,
        owner_share: 0.0,
        subsidy_share: 100.0,
        sawlog_sale_start: 10,
        products_sale_start: 27,
        asset_offset_months: 5,
        logging_volume: 800.0,
    };
    let fifth = ControlOption { id: 5, credit_share: 112.0, ..fourth.clone() };
    let sixth = ControlOption { id: 6, logging_volume: 1000.0, ..fifth.clone() };
    vec![base, second, third, fourth, fifth, sixth]
}
