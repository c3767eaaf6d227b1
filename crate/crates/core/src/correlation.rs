//! Windowed Pearson correlation matrices.
//!
//! The matrix for a window of depth k is (1/(k−1)) ZᵀZ on standardized
//! columns, accumulated in fixed ascending-lag order and clamped to [−1, 1]
//! so results are reproducible bit for bit across runs and thread counts.

use crate::error::{Error, Result};
use crate::panel::{column_stats, WindowMatrix};

/// Symmetric n×n matrix of windowed correlation coefficients with the
/// degeneracy mask of its source window.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    anchor_t: i64,
    depth_k: usize,
    n: usize,
    /// Row-major n×n entries.
    entries: Vec<f64>,
    degenerate: Vec<bool>,
}

impl CorrelationMatrix {
    pub fn anchor_t(&self) -> i64 {
        self.anchor_t
    }

    pub fn depth_k(&self) -> usize {
        self.depth_k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn degenerate(&self) -> &[bool] {
        &self.degenerate
    }

    /// Construct directly from entries; used by tests exercising fixed matrices.
    pub fn from_entries(entries: Vec<f64>, n: usize, degenerate: Vec<bool>) -> Result<Self> {
        if entries.len() != n * n || degenerate.len() != n {
            return Err(Error::Data("correlation matrix shape mismatch".into()));
        }
        Ok(Self { anchor_t: 0, depth_k: 0, n, entries, degenerate })
    }
}

/// Dot product of two standardized columns over ascending lags, divided by
/// k−1 and clamped. Zero columns (degenerate) yield exactly 0.
#[inline]
pub(crate) fn standardized_pair_r(a: &[f64], b: &[f64], k: usize) -> f64 {
    let mut acc = 0.0;
    for l in 0..k {
        acc += a[l] * b[l];
    }
    (acc / (k as f64 - 1.0)).clamp(-1.0, 1.0)
}

/// Correlation matrix of a window. Standardizes internally when handed a raw
/// window. Diagonal entries are exactly 1 for non-degenerate parameters and
/// 0 for degenerate ones.
pub fn correlation_matrix(window: WindowMatrix) -> CorrelationMatrix {
    let window = if window.is_standardized() { window } else { window.standardize() };
    let n = window.n();
    let k = window.depth_k();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        if !window.degenerate()[i] {
            entries[i * n + i] = 1.0;
        }
        for j in (i + 1)..n {
            let r = standardized_pair_r(window.column(i), window.column(j), k);
            entries[i * n + j] = r;
            entries[j * n + i] = r;
        }
    }
    CorrelationMatrix {
        anchor_t: window.anchor_t(),
        depth_k: k,
        n,
        entries,
        degenerate: window.degenerate().to_vec(),
    }
}

/// Scalar Pearson coefficient on two raw series of equal length ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrelation {
    pub r: f64,
    /// Set when either series is constant; `r` is then 0.
    pub degenerate: bool,
}

/// Classical Pearson correlation on raw series — the reference scalar oracle.
/// Returns r = 0 with the degeneracy flag when either series is constant.
pub fn pairwise_r(a: &[f64], b: &[f64]) -> Result<PairCorrelation> {
    if a.len() != b.len() {
        return Err(Error::Data(format!(
            "series length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 3 {
        return Err(Error::Data(format!(
            "series shorter than 3 elements: {}",
            a.len()
        )));
    }
    let sa = column_stats(a);
    let sb = column_stats(b);
    if sa.degenerate || sb.degenerate {
        return Ok(PairCorrelation { r: 0.0, degenerate: true });
    }
    let k = a.len() as f64;
    let mut cov = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - sa.mean) * (y - sb.mean);
    }
    cov /= k - 1.0;
    Ok(PairCorrelation {
        r: (cov / (sa.sd * sb.sd)).clamp(-1.0, 1.0),
        degenerate: false,
    })
}

/// Matrix dump CSV: n header labels, then n rows of n decimals at the given
/// number of significant digits.
pub fn matrix_csv(matrix: &CorrelationMatrix, labels: &[String], digits: usize) -> String {
    let mut out = String::new();
    out.push_str(&labels.join(","));
    out.push('\n');
    for i in 0..matrix.n() {
        for j in 0..matrix.n() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&crate::export::format_sig(matrix.get(i, j), digits));
        }
        out.push('\n');
    }
    out
}
