//! Correlation adaptometry for multivariate enterprise time series.
//!
//! The crate computes windowed Pearson correlation matrices over labelled
//! panels, aggregates them into per-parameter stress indicators G_i(t) and
//! the integral indicator G, builds correlation graphs at significant
//! thresholds, simulates a nine-block enterprise under six control options,
//! and ranks options by the integral indicator.

pub mod correlation;
pub mod error;
pub mod export;
pub mod graph;
pub mod indicator;
pub mod panel;
pub mod report;
pub mod scenario;
pub mod sim;
pub mod threshold;

pub use correlation::{correlation_matrix, matrix_csv, pairwise_r, CorrelationMatrix, PairCorrelation};
pub use error::{Error, Result};
pub use export::{format_sig, g_dynamics_csv, gi_surface_csv, svg_g_dynamics};
pub use graph::{correlation_graph, dot_export, CorrelationGraph, GraphEdge};
pub use indicator::{
    indicator_series, weight_indicator, GTotal, IndicatorResult, NormalizationMode,
};
pub use panel::{load_panel, window_slice, write_panel, Block, ParameterMeta, TimeSeriesPanel, WindowMatrix};
pub use report::AnalysisReport;
pub use scenario::{
    compare_report, detect_regimes, rank_options, ComparisonDocument, Objective, RankedScore,
    RegimeClass, RegimePhase, ScenarioScore, ScenarioTotals,
};
pub use sim::{
    builtin_options, describe_blocks, parse_scenario_file, simulate, BlockInfo, ControlOption,
    EnvironmentTimeline, SimConfig,
};
pub use threshold::{critical_r, ThresholdSpec};
