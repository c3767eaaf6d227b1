//! Critical correlation values: a fixed bound or the two-sided Pearson
//! significance bound at a given window depth.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// How the critical value r_sign is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdSpec {
    /// Use this value directly, 0 ≤ r ≤ 1.
    Fixed(f64),
    /// Two-sided significance level in (0, 1); the bound depends on k.
    Significance(f64),
}

impl ThresholdSpec {
    pub fn fixed(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Config(format!(
                "threshold must lie in [0,1], got {r}"
            )));
        }
        Ok(ThresholdSpec::Fixed(r))
    }

    pub fn significance(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Config(format!(
                "significance level must lie in (0,1), got {alpha}"
            )));
        }
        Ok(ThresholdSpec::Significance(alpha))
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            ThresholdSpec::Fixed(_) => "fixed",
            ThresholdSpec::Significance(_) => "significance",
        }
    }
}

/// Critical value at depth k. In significance mode this is the two-sided
/// Pearson bound r* = t*/sqrt(k−2+t*²) with t* the Student-t quantile at
/// 1−alpha/2 on k−2 degrees of freedom, clamped away from 1.
pub fn critical_r(k: usize, spec: &ThresholdSpec) -> Result<f64> {
    match *spec {
        ThresholdSpec::Fixed(r) => {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::Config(format!(
                    "threshold must lie in [0,1], got {r}"
                )));
            }
            Ok(r)
        }
        ThresholdSpec::Significance(alpha) => {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::Config(format!(
                    "significance level must lie in (0,1), got {alpha}"
                )));
            }
            if k < 3 {
                return Err(Error::InvalidDepth(k));
            }
            let df = (k - 2) as f64;
            let t = StudentsT::new(0.0, 1.0, df)
                .map_err(|e| Error::Config(format!("t-distribution: {e}")))?
                .inverse_cdf(1.0 - alpha / 2.0);
            let r = t / (df + t * t).sqrt();
            if !r.is_finite() || r > 1.0 - 1e-9 {
                Ok(1.0 - 1e-9)
            } else {
                Ok(r)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_passthrough() {
        let spec = ThresholdSpec::fixed(0.5).unwrap();
        assert_eq!(critical_r(12, &spec).unwrap(), 0.5);
        assert_eq!(critical_r(3, &ThresholdSpec::fixed(1.0).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn fixed_out_of_range() {
        assert!(ThresholdSpec::fixed(1.5).is_err());
        assert!(ThresholdSpec::fixed(-0.1).is_err());
    }

    // Two-sided critical-r values from published Pearson tables,
    // cross-checked against t-quantiles before the build.
    #[test]
    fn significance_matches_published_tables() {
        let spec = ThresholdSpec::significance(0.05).unwrap();
        let cases = [
            (3usize, 0.996_917),  // df = 1, t* = 12.7062
            (7, 0.754_492),       // df = 5, t* = 2.5706
            (12, 0.575_983),      // df = 10, t* = 2.2281
            (30, 0.361_007),      // df = 28, t* = 2.0484
        ];
        for (k, expected) in cases {
            let r = critical_r(k, &spec).unwrap();
            assert!((r - expected).abs() < 1e-3, "k={k}: {r} vs {expected}");
        }
    }

    #[test]
    fn extreme_alpha_clamped() {
        let spec = ThresholdSpec::significance(1e-300).unwrap();
        let r = critical_r(3, &spec).unwrap();
        assert!(r <= 1.0 - 1e-9 + 1e-15);
        assert!(r > 0.99);
    }

    #[test]
    fn invalid_spec_is_config_error() {
        assert!(ThresholdSpec::significance(0.0).is_err());
        assert!(ThresholdSpec::significance(1.0).is_err());
        assert!(matches!(
            critical_r(2, &ThresholdSpec::significance(0.05).unwrap()),
            Err(Error::InvalidDepth(2))
        ));
    }
}
