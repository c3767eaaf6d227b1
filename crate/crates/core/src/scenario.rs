//! Cross-scenario comparison: ranking by integral indicator and regime
//! classification of G(t) dynamics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicator::NormalizationMode;

/// Ranking direction. The default is `min` (lower correlation stress reads
/// as healthier); both orderings stay available because the source material
/// leaves the direction ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    pub fn parse(s: &str) -> Result<Objective> {
        match s {
            "min" => Ok(Objective::Min),
            "max" => Ok(Objective::Max),
            other => Err(Error::Config(format!("unknown objective \"{other}\" (min|max)"))),
        }
    }
}

/// Integral totals of one scenario, possibly partial per mode.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioTotals {
    pub raw: Option<f64>,
    pub per_tick: Option<f64>,
    pub per_cell: Option<f64>,
}

impl ScenarioTotals {
    pub fn get(&self, mode: NormalizationMode) -> Option<f64> {
        match mode {
            NormalizationMode::Raw => self.raw,
            NormalizationMode::PerTick => self.per_tick,
            NormalizationMode::PerCell => self.per_cell,
        }
    }

    pub fn available(&self) -> Vec<NormalizationMode> {
        let mut out = Vec::new();
        if self.raw.is_some() {
            out.push(NormalizationMode::Raw);
        }
        if self.per_tick.is_some() {
            out.push(NormalizationMode::PerTick);
        }
        if self.per_cell.is_some() {
            out.push(NormalizationMode::PerCell);
        }
        out
    }
}

/// One scenario's score: id, totals, and its G(t) series.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioScore {
    pub option_id: String,
    pub g_total: ScenarioTotals,
    pub per_tick: Vec<(i64, f64)>,
}

/// Numeric-aware ordering key so ids "1".."6" sort naturally and arbitrary
/// ids still order deterministically.
fn id_key(id: &str) -> (u8, u64, &str) {
    match id.parse::<u64>() {
        Ok(v) => (0, v, ""),
        Err(_) => (1, 0, id),
    }
}

/// A scored scenario with its rank (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct RankedScore {
    pub option_id: String,
    pub g_total: f64,
    pub rank: usize,
}

/// Stable sort by g_total under the objective, ties broken by ascending
/// option id.
pub fn rank_options(
    scores: &[ScenarioScore],
    objective: Objective,
    mode: NormalizationMode,
) -> Result<Vec<RankedScore>> {
    if scores.is_empty() {
        return Err(Error::Config("rank_options needs at least one score".into()));
    }
    let mut entries: Vec<(String, f64)> = Vec::with_capacity(scores.len());
    for s in scores {
        let value = s.g_total.get(mode).ok_or_else(|| {
            Error::Config(format!(
                "mode mismatch: score \"{}\" has no {} total",
                s.option_id,
                mode.name()
            ))
        })?;
        entries.push((s.option_id.clone(), value));
    }
    entries.sort_by(|a, b| {
        let ord = a.1.partial_cmp(&b.1).expect("totals are finite");
        let ord = match objective {
            Objective::Min => ord,
            Objective::Max => ord.reverse(),
        };
        ord.then_with(|| id_key(&a.0).cmp(&id_key(&b.0)))
    });
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(idx, (option_id, g_total))| RankedScore { option_id, g_total, rank: idx + 1 })
        .collect())
}

/// Phase classes of the indicator dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeClass {
    Stable,
    StressGrowth,
    Adaptation,
    NonAdaptation,
}

/// A contiguous tick range with one dynamics class. Phases partition the
/// analyzed range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimePhase {
    pub from: i64,
    pub to: i64,
    pub class: RegimeClass,
}

/// Classify G(t) phases by the slope of a trailing moving mean of width
/// `window_w`, relative to the current smoothed level: growth above
/// `rel_eps`·level, adaptation below −`rel_eps`·level, stable between.
/// Growth persisting to the end of the series becomes non-adaptation.
pub fn detect_regimes(
    g_series: &[(i64, f64)],
    window_w: usize,
    rel_eps: f64,
) -> Result<Vec<RegimePhase>> {
    if window_w == 0 {
        return Err(Error::Config("window_w must be >= 1".into()));
    }
    let len = g_series.len();
    if len < 2 * window_w {
        return Err(Error::Data(format!(
            "series of {len} ticks is too short for regime detection with window {window_w}"
        )));
    }
    let smoothed: Vec<f64> = (window_w - 1..len)
        .map(|i| {
            let sum: f64 = g_series[i + 1 - window_w..=i].iter().map(|&(_, g)| g).sum();
            sum / window_w as f64
        })
        .collect();

    // class at series index i (i >= window_w)
    let class_at = |i: usize| -> RegimeClass {
        let s_prev = smoothed[i - window_w];
        let s_cur = smoothed[i - window_w + 1];
        let slope = s_cur - s_prev;
        let bound = rel_eps * s_cur.abs();
        if slope > bound {
            RegimeClass::StressGrowth
        } else if slope < -bound {
            RegimeClass::Adaptation
        } else {
            RegimeClass::Stable
        }
    };

    let mut phases: Vec<RegimePhase> = Vec::new();
    let mut run_class = class_at(window_w);
    let mut run_start = 0usize; // the warm-up ticks join the first phase
    for i in window_w + 1..len {
        let c = class_at(i);
        if c != run_class {
            phases.push(RegimePhase {
                from: g_series[run_start].0,
                to: g_series[i - 1].0,
                class: run_class,
            });
            run_class = c;
            run_start = i;
        }
    }
    phases.push(RegimePhase {
        from: g_series[run_start].0,
        to: g_series[len - 1].0,
        class: run_class,
    });

    if let Some(last) = phases.last_mut() {
        if last.class == RegimeClass::StressGrowth {
            last.class = RegimeClass::NonAdaptation;
        }
    }
    Ok(phases)
}

/// One scenario's entry in the comparison document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub id: String,
    pub g_total: f64,
    pub rank: usize,
    /// g_total − minimum g_total across the compared options.
    pub delta: f64,
    pub regimes: Vec<RegimePhase>,
}

/// The comparison JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonDocument {
    pub mode: String,
    pub objective: Objective,
    pub options: Vec<ComparisonEntry>,
}

/// Assemble the comparison document from ranked scores and per-scenario
/// regimes, ordered by rank.
pub fn compare_report(
    rankings: &[RankedScore],
    regimes: &[(String, Vec<RegimePhase>)],
    objective: Objective,
    mode: NormalizationMode,
) -> Result<ComparisonDocument> {
    if rankings.is_empty() {
        return Err(Error::Config("comparison needs at least one ranked score".into()));
    }
    let min_total = rankings
        .iter()
        .map(|r| r.g_total)
        .fold(f64::INFINITY, f64::min);
    let options = rankings
        .iter()
        .map(|r| {
            let phases = regimes
                .iter()
                .find(|(id, _)| *id == r.option_id)
                .map(|(_, p)| p.clone())
                .ok_or_else(|| {
                    Error::Config(format!("no regime phases for option \"{}\"", r.option_id))
                })?;
            Ok(ComparisonEntry {
                id: r.option_id.clone(),
                g_total: r.g_total,
                rank: r.rank,
                delta: r.g_total - min_total,
                regimes: phases,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonDocument { mode: mode.name().to_string(), objective, options })
}

impl ComparisonDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("comparison serialization");
        s.push('\n');
        s
    }
}
