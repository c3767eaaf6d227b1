//! The per-scenario JSON analysis report.

use serde::{Deserialize, Serialize};

use crate::indicator::IndicatorResult;
use crate::threshold::ThresholdSpec;

/// Threshold description embedded in reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdInfo {
    /// "fixed" or "significance".
    pub mode: String,
    /// Realized r_sign at the report's window depth.
    pub value_at_k: f64,
}

/// Integral indicator totals; all three modes are written by `analyze`,
/// but readers tolerate partial availability.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GTotalReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_tick: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_cell: Option<f64>,
}

/// One G(t) sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerTickEntry {
    pub t: i64,
    #[serde(rename = "G")]
    pub g: f64,
}

/// The analysis report schema, field names fixed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub scenario_id: String,
    pub n: usize,
    pub ticks_analyzed: usize,
    pub k: usize,
    pub threshold: ThresholdInfo,
    pub g_total: GTotalReport,
    pub per_tick: Vec<PerTickEntry>,
}

impl AnalysisReport {
    pub fn from_result(
        scenario_id: &str,
        result: &IndicatorResult,
        spec: &ThresholdSpec,
    ) -> AnalysisReport {
        let total = result.g_total();
        AnalysisReport {
            scenario_id: scenario_id.to_string(),
            n: result.n(),
            ticks_analyzed: result.ticks_analyzed(),
            k: result.k(),
            threshold: ThresholdInfo {
                mode: spec.mode_name().to_string(),
                value_at_k: result.threshold_used().first().copied().unwrap_or(0.0),
            },
            g_total: GTotalReport {
                raw: Some(total.raw),
                per_tick: Some(total.per_tick),
                per_cell: Some(total.per_cell),
            },
            per_tick: result
                .analyzed_ticks()
                .iter()
                .zip(result.g_per_tick())
                .map(|(&t, &g)| PerTickEntry { t, g })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::error::Result<AnalysisReport> {
        serde_json::from_str(text)
            .map_err(|e| crate::error::Error::Data(format!("invalid report JSON: {e}")))
    }
}
