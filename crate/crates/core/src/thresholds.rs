//! Decision thresholds for every diagnostic measure.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Configurable cutoffs used when turning measures into a verdict.
///
/// Defaults follow common diagnostics practice: condition number 30
/// (20 to 30 moderate), VIF 10, pairwise correlation `sqrt(0.9)`, variance
/// decomposition proportion 0.5, coefficient of variation 0.1002506 (below
/// it a regressor is close enough to constant to worry), and a 0.95
/// proportion-of-ones cutoff for a lone dummy regressor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    /// Condition number / condition index at or above which collinearity is
    /// problematic.
    pub cn_problematic: f64,
    /// Lower edge of the moderate condition-number band.
    pub cn_moderate: f64,
    /// VIF at or above which a regressor is flagged.
    pub vif: f64,
    /// Absolute pairwise correlation at or above which a pair is flagged.
    pub corr: f64,
    /// Variance decomposition proportion at or above which a coefficient
    /// co-loads on a condition index.
    pub vdp: f64,
    /// Coefficient of variation below which a regressor has worryingly low
    /// relative variability (non-essential collinearity with the intercept).
    pub cv: f64,
    /// Proportion of ones at or above which a lone dummy regressor is
    /// considered problematically close to the intercept.
    pub dummy_proportion: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            cn_problematic: 30.0,
            cn_moderate: 20.0,
            vif: 10.0,
            corr: 0.9f64.sqrt(),
            vdp: 0.5,
            cv: 0.1002506,
            dummy_proportion: 0.95,
        }
    }
}

impl ThresholdConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let positive = [
            ("cn_problematic", self.cn_problematic),
            ("cn_moderate", self.cn_moderate),
            ("vif", self.vif),
            ("corr", self.corr),
            ("vdp", self.vdp),
            ("cv", self.cv),
            ("dummy_proportion", self.dummy_proportion),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidThresholds(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        if self.cn_moderate > self.cn_problematic {
            return Err(Error::InvalidThresholds(format!(
                "cn_moderate ({}) must not exceed cn_problematic ({})",
                self.cn_moderate, self.cn_problematic
            )));
        }
        if self.corr > 1.0 {
            return Err(Error::InvalidThresholds(format!(
                "corr must lie in (0, 1], got {}",
                self.corr
            )));
        }
        if self.vdp > 1.0 {
            return Err(Error::InvalidThresholds(format!(
                "vdp must lie in (0, 1], got {}",
                self.vdp
            )));
        }
        if self.dummy_proportion >= 1.0 {
            return Err(Error::InvalidThresholds(format!(
                "dummy_proportion must lie in (0, 1), got {}",
                self.dummy_proportion
            )));
        }
        Ok(())
    }
}

/// One (measure, observed value, threshold) triple backing a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub measure: String,
    pub value: f64,
    pub threshold: f64,
}

impl Evidence {
    pub fn new(measure: impl Into<String>, value: f64, threshold: f64) -> Self {
        Evidence {
            measure: measure.into(),
            value,
            threshold,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ThresholdConfig::default().validate().unwrap();
        assert!((ThresholdConfig::default().corr - 0.948683).abs() < 1e-6);
    }

    #[test]
    fn inverted_cn_band_is_rejected() {
        let t = ThresholdConfig {
            cn_moderate: 40.0,
            ..Default::default()
        };
        assert!(t.validate().is_err());
    }

    #[test]
    fn non_positive_threshold_is_rejected() {
        let t = ThresholdConfig {
            vif: 0.0,
            ..Default::default()
        };
        assert!(t.validate().is_err());
    }
}
