//! Time-series panel data model, CSV ingestion, and windowed slicing.
//!
//! A panel holds `n` labelled parameter series over `T` contiguous monthly
//! ticks. Windows slice the `k` ticks preceding an anchor tick, most recent
//! first, and can be standardized column-wise for correlation work.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Relative tolerance below which a window column counts as constant.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// The nine business-plan blocks plus the unassigned default for loaded data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Environment,
    Investment,
    Equipment,
    Depreciation,
    Products,
    Logistics,
    Staffing,
    Finance,
    Ecology,
    Engineering,
    Unassigned,
}

impl Block {
    /// Block ordinal 0..=9 as used in the business-plan structure.
    pub fn ordinal(self) -> Option<usize> {
        match self {
            Block::Environment => Some(0),
            Block::Investment => Some(1),
            Block::Equipment => Some(2),
            Block::Depreciation => Some(3),
            Block::Products => Some(4),
            Block::Logistics => Some(5),
            Block::Staffing => Some(6),
            Block::Finance => Some(7),
            Block::Ecology => Some(8),
            Block::Engineering => Some(9),
            Block::Unassigned => None,
        }
    }

    pub fn from_ordinal(ord: usize) -> Option<Block> {
        match ord {
            0 => Some(Block::Environment),
            1 => Some(Block::Investment),
            2 => Some(Block::Equipment),
            3 => Some(Block::Depreciation),
            4 => Some(Block::Products),
            5 => Some(Block::Logistics),
            6 => Some(Block::Staffing),
            7 => Some(Block::Finance),
            8 => Some(Block::Ecology),
            9 => Some(Block::Engineering),
            _ => None,
        }
    }

    /// Human-readable block name.
    pub fn name(self) -> &'static str {
        match self {
            Block::Environment => "external environment",
            Block::Investment => "investment plan",
            Block::Equipment => "equipment and machinery",
            Block::Depreciation => "depreciation",
            Block::Products => "products",
            Block::Logistics => "warehouse and logistics",
            Block::Staffing => "staffing",
            Block::Finance => "budget and economy",
            Block::Ecology => "ecology",
            Block::Engineering => "engineering",
            Block::Unassigned => "unassigned",
        }
    }
}

/// Metadata for one parameter series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterMeta {
    /// 1-based ordinal, contiguous 1..=n.
    pub index: usize,
    pub label: String,
    pub block: Block,
}

/// `n` labelled series over `T` contiguous integer ticks.
///
/// Immutable after construction; `values[i][p]` is parameter `i` at the
/// p-th tick. All cells are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesPanel {
    meta: Vec<ParameterMeta>,
    ticks: Vec<i64>,
    values: Vec<Vec<f64>>,
}

impl TimeSeriesPanel {
    /// Build a panel from metadata and an n×T value matrix, enforcing the
    /// panel invariants.
    pub fn new(meta: Vec<ParameterMeta>, ticks: Vec<i64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = meta.len();
        if n < 2 {
            return Err(Error::Data(format!("panel needs n >= 2 parameters, got {n}")));
        }
        if ticks.is_empty() {
            return Err(Error::Data("panel needs T >= 1 ticks".into()));
        }
        for (pos, w) in ticks.windows(2).enumerate() {
            if w[1] != w[0] + 1 {
                return Err(Error::Data(format!(
                    "non-contiguous ticks: {} followed by {} at position {}",
                    w[0],
                    w[1],
                    pos + 2
                )));
            }
        }
        let mut seen = HashSet::new();
        for (i, m) in meta.iter().enumerate() {
            if m.index != i + 1 {
                return Err(Error::Data(format!(
                    "parameter index must be contiguous 1..=n: got {} at position {}",
                    m.index,
                    i + 1
                )));
            }
            if m.label.is_empty() {
                return Err(Error::Data(format!("empty label for parameter {}", i + 1)));
            }
            if !seen.insert(m.label.as_str()) {
                return Err(Error::Data(format!("duplicate label \"{}\"", m.label)));
            }
        }
        if values.len() != n {
            return Err(Error::Data(format!(
                "value matrix has {} rows, expected {n}",
                values.len()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != ticks.len() {
                return Err(Error::Data(format!(
                    "series {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    ticks.len()
                )));
            }
            if let Some(p) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Data(format!(
                    "non-finite value in series {} at tick {}",
                    i + 1,
                    ticks[p]
                )));
            }
        }
        Ok(Self { meta, ticks, values })
    }

    pub fn n(&self) -> usize {
        self.meta.len()
    }

    /// Number of ticks T.
    pub fn len(&self) -> usize {
        self.ticks.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: T >= 1
    }

    pub fn ticks(&self) -> &[i64] {
        &self.ticks
    }

    pub fn first_tick(&self) -> i64 {
        self.ticks[0]
    }

    pub fn last_tick(&self) -> i64 {
        *self.ticks.last().unwrap()
    }

    pub fn meta(&self) -> &[ParameterMeta] {
        &self.meta
    }

    pub fn labels(&self) -> Vec<String> {
        self.meta.iter().map(|m| m.label.clone()).collect()
    }

    /// Full series for parameter `i` (0-based).
    pub fn series(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    /// Value of parameter `i` (0-based) at `tick`.
    pub fn value_at(&self, i: usize, tick: i64) -> Option<f64> {
        let pos = self.position_of(tick)?;
        Some(self.values[i][pos])
    }

    fn position_of(&self, tick: i64) -> Option<usize> {
        if tick < self.first_tick() || tick > self.last_tick() {
            return None;
        }
        Some((tick - self.first_tick()) as usize)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.meta.iter().position(|m| m.label == label)
    }

    /// Raw slice of parameter `i` over ticks `t-k ..= t-1`, most recent last.
    /// Used by the scalar correlation oracle on unstandardized data.
    pub fn raw_window(&self, i: usize, t: i64, k: usize) -> Result<Vec<f64>> {
        check_window_bounds(self, t, k)?;
        let start = self.position_of(t - k as i64).unwrap();
        Ok(self.values[i][start..start + k].to_vec())
    }
}

fn check_window_bounds(panel: &TimeSeriesPanel, t: i64, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidDepth(k));
    }
    let from = t - k as i64;
    let to = t - 1;
    if from < panel.first_tick() || to > panel.last_tick() {
        return Err(Error::InsufficientHistory {
            anchor: t,
            depth: k,
            from,
            to,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Panel CSV
// ---------------------------------------------------------------------------

/// Parse the panel CSV format: header `t,<label1>,...,<labeln>`, then one row
/// per tick with an integer tick and n decimal cells, ascending tick order.
///
/// Row/column positions in errors are 1-based file coordinates (header = row 1).
pub fn load_panel(source: &[u8]) -> Result<TimeSeriesPanel> {
    let text = std::str::from_utf8(source)
        .map_err(|_| Error::Format("panel CSV is not valid UTF-8".into()))?;

    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
    let mut fields = header.split(',');
    match fields.next() {
        Some("t") => {}
        other => {
            return Err(Error::Format(format!(
                "malformed header: first column must be \"t\", got {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let labels: Vec<&str> = fields.collect();
    if labels.len() < 2 {
        return Err(Error::Format(format!(
            "malformed header: need at least 2 parameter labels, got {}",
            labels.len()
        )));
    }
    if let Some(pos) = labels.iter().position(|l| l.is_empty()) {
        return Err(Error::Format(format!(
            "malformed header: empty label in column {}",
            pos + 2
        )));
    }
    let n = labels.len();

    let mut ticks: Vec<i64> = Vec::new();
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); n];
    for (line_idx, line) in lines.enumerate() {
        let row = line_idx + 2; // 1-based, after the header
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != n + 1 {
            let col = cells.len().min(n + 1) + 1;
            return Err(Error::Data(format!(
                "row {row}: expected {} cells, found {} (missing or extra cell at column {col})",
                n + 1,
                cells.len()
            )));
        }
        let tick: i64 = cells[0].parse().map_err(|_| {
            Error::Data(format!("row {row}, column 1: invalid tick \"{}\"", cells[0]))
        })?;
        if let Some(&prev) = ticks.last() {
            if tick != prev + 1 {
                return Err(Error::Data(format!(
                    "non-contiguous ticks: row {row} has tick {tick} after {prev}"
                )));
            }
        }
        ticks.push(tick);
        for (i, cell) in cells[1..].iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                Error::Data(format!(
                    "row {row}, column {}: invalid number \"{cell}\"",
                    i + 2
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Data(format!(
                    "row {row}, column {}: non-finite value \"{cell}\"",
                    i + 2
                )));
            }
            values[i].push(v);
        }
    }
    if ticks.is_empty() {
        return Err(Error::Data("panel has no data rows".into()));
    }

    let meta = labels
        .iter()
        .enumerate()
        .map(|(i, l)| ParameterMeta {
            index: i + 1,
            label: (*l).to_string(),
            block: Block::Unassigned,
        })
        .collect();
    TimeSeriesPanel::new(meta, ticks, values)
}

/// Render a panel in the canonical CSV form. Values use Rust's shortest
/// round-trip decimal formatting so `load_panel(write_panel(p)) == p` cell
/// for cell.
pub fn write_panel(panel: &TimeSeriesPanel) -> String {
    let mut out = String::new();
    out.push('t');
    for m in panel.meta() {
        out.push(',');
        out.push_str(&m.label);
    }
    out.push('\n');
    for (p, &tick) in panel.ticks().iter().enumerate() {
        out.push_str(&tick.to_string());
        for i in 0..panel.n() {
            out.push(',');
            out.push_str(&crate::export::fmt_f64(panel.series(i)[p]));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

/// The k×n window of the ticks preceding an anchor: logical row l (l = 1..=k)
/// holds x(t−l). Stored column-major for the correlation pass.
#[derive(Debug, Clone)]
pub struct WindowMatrix {
    anchor_t: i64,
    depth_k: usize,
    n: usize,
    /// Column-major, `data[i*k + (l-1)]` = parameter i at lag l.
    data: Vec<f64>,
    standardized: bool,
    degenerate: Vec<bool>,
}

impl WindowMatrix {
    pub fn anchor_t(&self) -> i64 {
        self.anchor_t
    }

    pub fn depth_k(&self) -> usize {
        self.depth_k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    /// Degeneracy mask; meaningful after standardization (all false before).
    pub fn degenerate(&self) -> &[bool] {
        &self.degenerate
    }

    /// Column i as a contiguous slice over lags 1..=k.
    pub fn column(&self, i: usize) -> &[f64] {
        &self.data[i * self.depth_k..(i + 1) * self.depth_k]
    }

    /// Logical row for lag l (1-based): x(t−l) over all parameters.
    pub fn row(&self, l: usize) -> Vec<f64> {
        assert!((1..=self.depth_k).contains(&l), "lag out of range");
        (0..self.n).map(|i| self.data[i * self.depth_k + l - 1]).collect()
    }

    /// Standardize each column to mean 0, sample sd 1 (1/(k−1) convention).
    /// Columns with no usable variance are zero-filled and flagged degenerate.
    pub fn standardize(mut self) -> WindowMatrix {
        let k = self.depth_k;
        for i in 0..self.n {
            let col = &mut self.data[i * k..(i + 1) * k];
            let stats = column_stats(col);
            if stats.degenerate {
                col.fill(0.0);
                self.degenerate[i] = true;
            } else {
                for v in col.iter_mut() {
                    *v = (*v - stats.mean) / stats.sd;
                }
            }
        }
        self.standardized = true;
        self
    }
}

pub(crate) struct ColumnStats {
    pub mean: f64,
    pub sd: f64,
    pub degenerate: bool,
}

/// Mean, sample sd, and the constant-column test shared by standardization
/// and the scalar correlation oracle.
pub(crate) fn column_stats(col: &[f64]) -> ColumnStats {
    let k = col.len();
    let mean = col.iter().sum::<f64>() / k as f64;
    let ss: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (k as f64 - 1.0)).sqrt();
    let scale = col.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    ColumnStats {
        mean,
        sd,
        degenerate: sd <= DEGENERACY_EPS * scale,
    }
}

/// Slice the window of depth k anchored at tick t: row l = panel values at
/// tick t−l (most recent first), all n columns, unstandardized.
pub fn window_slice(panel: &TimeSeriesPanel, t: i64, k: usize) -> Result<WindowMatrix> {
    check_window_bounds(panel, t, k)?;
    let n = panel.n();
    let mut data = vec![0.0; n * k];
    for i in 0..n {
        let series = panel.series(i);
        let base = (t - panel.first_tick()) as usize; // position of tick t
        for l in 1..=k {
            data[i * k + l - 1] = series[base - l];
        }
    }
    Ok(WindowMatrix {
        anchor_t: t,
        depth_k: k,
        n,
        data,
        standardized: false,
        degenerate: vec![false; n],
    })
}
