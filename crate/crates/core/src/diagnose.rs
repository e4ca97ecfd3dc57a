//! Full-run orchestration: compute every applicable measure, classify any
//! detected multicollinearity as essential or non-essential, and assemble a
//! serializable report.

use serde::{Deserialize, Serialize};

use crate::dataset::{ColumnRole, DesignMatrix};
use crate::error::{Error, MeasureError};
use crate::measures::{
    belsley, coefficient_of_variation, condition_number, correlation_report, proportion_of_ones,
    slm_diagnostics, stewart_table, vif_table, BelsleyTable, CorrelationReport, SlmReport,
    StewartTable, VifTable,
};
use crate::numerics::ols;
use crate::thresholds::{Evidence, ThresholdConfig};

/// A measure that either ran or did not apply to this design.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MeasureOutcome<T> {
    Computed { value: T },
    NotApplicable { reason: String },
}

impl<T> MeasureOutcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            MeasureOutcome::Computed { value } => Some(value),
            MeasureOutcome::NotApplicable { .. } => None,
        }
    }

    pub fn is_computed(&self) -> bool {
        matches!(self, MeasureOutcome::Computed { .. })
    }
}

/// Wraps a measure result, downgrading "does not apply here" errors to a
/// reason string while letting numerical failures propagate.
fn outcome_of<T>(result: Result<T, MeasureError>) -> Result<MeasureOutcome<T>, Error> {
    match result {
        Ok(value) => Ok(MeasureOutcome::Computed { value }),
        Err(MeasureError::Numerics(e)) => Err(Error::Numerics(e)),
        Err(e) => Ok(MeasureOutcome::NotApplicable {
            reason: e.to_string(),
        }),
    }
}

/// Kind of multicollinearity detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    None,
    Essential,
    NonEssential,
    Both,
}

/// Classification of the detected collinearity plus the columns involved.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Sets of column names co-loading (VDP at or above threshold) on a
    /// condition index at or above the problematic cutoff; for the simple
    /// linear model, the intercept/regressor pair.
    pub implicated: Vec<Vec<String>>,
    pub evidence: Vec<Evidence>,
}

impl Verdict {
    fn none() -> Self {
        Verdict {
            kind: VerdictKind::None,
            implicated: Vec::new(),
            evidence: Vec::new(),
        }
    }
}

/// Per-column variability screen: low relative variability signals
/// non-essential collinearity with the intercept.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "measure", rename_all = "snake_case")]
pub enum VariabilityEntry {
    CoefficientOfVariation { name: String, value: f64 },
    ProportionOfOnes { name: String, value: f64 },
    Unavailable { name: String, reason: String },
}

impl VariabilityEntry {
    pub fn name(&self) -> &str {
        match self {
            VariabilityEntry::CoefficientOfVariation { name, .. }
            | VariabilityEntry::ProportionOfOnes { name, .. }
            | VariabilityEntry::Unavailable { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariabilityTable {
    pub entries: Vec<VariabilityEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnSummary {
    pub name: String,
    pub role: ColumnRole,
}

/// Everything one diagnostic run produces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub dataset: String,
    pub n: usize,
    pub k: usize,
    pub columns: Vec<ColumnSummary>,
    pub thresholds: ThresholdConfig,
    /// True when dummy columns were re-admitted into the correlation matrix
    /// and the VIF table for compatibility with older tooling.
    pub legacy_dummy_measures: bool,
    pub model_r_squared: Option<f64>,
    pub condition_number_with_intercept: f64,
    pub condition_number_without_intercept: f64,
    pub correlation: MeasureOutcome<CorrelationReport>,
    pub vif: MeasureOutcome<VifTable>,
    pub stewart: MeasureOutcome<StewartTable>,
    pub belsley: MeasureOutcome<BelsleyTable>,
    pub variability: VariabilityTable,
    pub slm: Option<SlmReport>,
    pub verdict: Verdict,
}

/// Options for a diagnostic run.
#[derive(Debug, Clone)]
pub struct DiagnoseOptions {
    pub thresholds: ThresholdConfig,
    /// Re-admit dummy columns into the correlation matrix and VIF table.
    pub include_dummies_in_legacy_measures: bool,
    /// Label carried into the report (usually the source file name).
    pub dataset_label: String,
}

impl Default for DiagnoseOptions {
    fn default() -> Self {
        DiagnoseOptions {
            thresholds: ThresholdConfig::default(),
            include_dummies_in_legacy_measures: false,
            dataset_label: "design".into(),
        }
    }
}

fn variability_table(x: &DesignMatrix) -> VariabilityTable {
    let entries = x
        .columns()
        .iter()
        .filter(|c| c.role != ColumnRole::Intercept)
        .map(|c| match c.role {
            ColumnRole::Dummy => VariabilityEntry::ProportionOfOnes {
                name: c.name.clone(),
                value: proportion_of_ones(&c.values),
            },
            _ => match coefficient_of_variation(&c.name, &c.values) {
                Ok(value) => VariabilityEntry::CoefficientOfVariation {
                    name: c.name.clone(),
                    value,
                },
                Err(e) => VariabilityEntry::Unavailable {
                    name: c.name.clone(),
                    reason: e.to_string(),
                },
            },
        })
        .collect();
    VariabilityTable { entries }
}

fn verdict_from_belsley(
    x: &DesignMatrix,
    table: &BelsleyTable,
    thresholds: &ThresholdConfig,
) -> Verdict {
    let k = x.k();
    let mut implicated: Vec<Vec<String>> = Vec::new();
    let mut evidence: Vec<Evidence> = Vec::new();
    let mut essential = false;
    let mut non_essential = false;

    for (i, &index) in table.condition_indexes.iter().enumerate() {
        if index < thresholds.cn_problematic {
            continue;
        }
        let members: Vec<usize> = (0..k).filter(|&j| table.vdp[i][j] >= thresholds.vdp).collect();
        if members.len() < 2 {
            // a single loading localizes nothing: no relation to report
            continue;
        }
        let has_intercept = members
            .iter()
            .any(|&j| x.column(j).role == ColumnRole::Intercept);
        if has_intercept {
            non_essential = true;
        } else {
            essential = true;
        }
        evidence.push(Evidence::new(
            "condition_index",
            index,
            thresholds.cn_problematic,
        ));
        for &j in &members {
            evidence.push(Evidence::new(
                format!("vdp:{}", table.column_names[j]),
                table.vdp[i][j],
                thresholds.vdp,
            ));
        }
        implicated.push(members.iter().map(|&j| x.column(j).name.clone()).collect());
    }

    let kind = match (essential, non_essential) {
        (false, false) => VerdictKind::None,
        (true, false) => VerdictKind::Essential,
        (false, true) => VerdictKind::NonEssential,
        (true, true) => VerdictKind::Both,
    };
    if kind == VerdictKind::None {
        return Verdict::none();
    }
    Verdict {
        kind,
        implicated,
        evidence,
    }
}

fn verdict_from_slm(x: &DesignMatrix, slm: &SlmReport) -> Verdict {
    if !slm.problematic {
        return Verdict::none();
    }
    Verdict {
        // with one regressor the only possible relation is with the intercept
        kind: VerdictKind::NonEssential,
        implicated: vec![vec![x.column(0).name.clone(), slm.regressor.clone()]],
        evidence: slm.evidence.clone(),
    }
}

fn corroborating_evidence(
    report_correlation: &MeasureOutcome<CorrelationReport>,
    report_vif: &MeasureOutcome<VifTable>,
    variability: &VariabilityTable,
    thresholds: &ThresholdConfig,
) -> Vec<Evidence> {
    let mut out = Vec::new();
    if let Some(vif) = report_vif.value() {
        for entry in &vif.entries {
            if let Some(v) = entry.vif() {
                if v >= thresholds.vif {
                    out.push(Evidence::new(
                        format!("vif:{}", entry.name()),
                        v,
                        thresholds.vif,
                    ));
                }
            }
        }
    }
    for entry in &variability.entries {
        if let VariabilityEntry::CoefficientOfVariation { name, value } = entry {
            if *value < thresholds.cv {
                out.push(Evidence::new(format!("cv:{name}"), *value, thresholds.cv));
            }
        }
    }
    if let Some(corr) = report_correlation.value() {
        for pair in &corr.flagged_pairs {
            out.push(Evidence::new(
                format!("corr:{},{}", pair.first, pair.second),
                pair.abs_correlation,
                thresholds.corr,
            ));
        }
    }
    out
}

/// Runs every applicable measure on the design and classifies the result.
///
/// Rank deficiency and eigensolver failures propagate as errors; measures
/// that merely do not apply to this design are reported as such with a
/// reason. A two-column design with intercept is routed through the
/// simple-linear-model path as well and never fails just for being small.
pub fn diagnose(
    x: &DesignMatrix,
    y: Option<&[f64]>,
    options: &DiagnoseOptions,
) -> Result<DiagnosticsReport, Error> {
    options.thresholds.validate()?;
    let thresholds = &options.thresholds;
    let legacy = options.include_dummies_in_legacy_measures;

    let non_intercept = x
        .columns()
        .iter()
        .filter(|c| c.role != ColumnRole::Intercept)
        .count();
    if non_intercept == 0 {
        return Err(Error::Measure(MeasureError::NotEnoughColumns {
            measure: "diagnostics",
            needed: 1,
            got: 0,
        }));
    }

    let cn_with = condition_number(x, true).map_err(Error::Measure)?;
    let cn_without = condition_number(x, false).map_err(Error::Measure)?;
    let correlation = outcome_of(correlation_report(x, thresholds.corr, legacy))?;
    let vif = outcome_of(vif_table(x, legacy))?;
    let stewart = outcome_of(stewart_table(x))?;
    let belsley_outcome = outcome_of(belsley(x))?;
    let variability = variability_table(x);
    let slm = if x.k() == 2 && x.has_intercept() {
        Some(slm_diagnostics(x, thresholds).map_err(Error::Measure)?)
    } else {
        None
    };
    let model_r_squared = match y {
        Some(values) => Some(ols(x, values).map_err(Error::Numerics)?.r_squared),
        None => None,
    };

    let mut verdict = match (&slm, belsley_outcome.value()) {
        (Some(report), _) => verdict_from_slm(x, report),
        (None, Some(table)) => verdict_from_belsley(x, table, thresholds),
        (None, None) => Verdict::none(),
    };
    if verdict.kind != VerdictKind::None {
        verdict.evidence.extend(corroborating_evidence(
            &correlation,
            &vif,
            &variability,
            thresholds,
        ));
    }

    Ok(DiagnosticsReport {
        dataset: options.dataset_label.clone(),
        n: x.n(),
        k: x.k(),
        columns: x
            .columns()
            .iter()
            .map(|c| ColumnSummary {
                name: c.name.clone(),
                role: c.role,
            })
            .collect(),
        thresholds: thresholds.clone(),
        legacy_dummy_measures: legacy,
        model_r_squared,
        condition_number_with_intercept: cn_with,
        condition_number_without_intercept: cn_without,
        correlation,
        vif,
        stewart,
        belsley: belsley_outcome,
        variability,
        slm,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Column;

    fn design(cols: Vec<(&str, ColumnRole, Vec<f64>)>) -> DesignMatrix {
        DesignMatrix::from_columns(
            cols.into_iter()
                .map(|(name, role, values)| Column {
                    name: name.into(),
                    role,
                    values,
                })
                .collect(),
        )
        .unwrap()
    }

    fn orthogonal_design() -> DesignMatrix {
        design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 4]),
            ("a", ColumnRole::Quantitative, vec![-1.0, 1.0, -1.0, 1.0]),
            ("b", ColumnRole::Quantitative, vec![-1.0, -1.0, 1.0, 1.0]),
        ])
    }

    #[test]
    fn orthogonal_design_yields_no_verdict() {
        let report = diagnose(&orthogonal_design(), None, &DiagnoseOptions::default()).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::None);
        assert!(report.verdict.implicated.is_empty());
        assert!((report.condition_number_with_intercept - 1.0).abs() < 1e-9);
    }

    #[test]
    fn essential_collinearity_between_regressors() {
        // b tracks a almost exactly; both are mean-free so the intercept
        // stays out of the relation
        let a = vec![-3.0, -1.0, 0.0, 1.0, 3.0, 0.0];
        let b: Vec<f64> = a
            .iter()
            .enumerate()
            .map(|(i, v)| v + 1e-4 * [1.0, -1.0, 2.0, -2.0, 1.0, -1.0][i])
            .collect();
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 6]),
            ("a", ColumnRole::Quantitative, a),
            ("b", ColumnRole::Quantitative, b),
        ]);
        let report = diagnose(&x, None, &DiagnoseOptions::default()).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::Essential);
        assert_eq!(report.verdict.implicated, vec![vec!["a", "b"]]);
    }

    #[test]
    fn intercept_only_design_is_rejected() {
        let x = design(vec![("intercept", ColumnRole::Intercept, vec![1.0; 4])]);
        assert!(diagnose(&x, None, &DiagnoseOptions::default()).is_err());
    }

    #[test]
    fn exact_collinearity_propagates_as_error() {
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 4]),
            ("a", ColumnRole::Quantitative, vec![1.0, 2.0, 3.0, 4.0]),
            ("b", ColumnRole::Quantitative, vec![2.0, 4.0, 6.0, 8.0]),
        ]);
        let err = diagnose(&x, None, &DiagnoseOptions::default()).unwrap_err();
        assert!(err.is_numerical(), "{err}");
    }

    #[test]
    fn raising_cn_threshold_never_creates_a_finding() {
        let a = vec![-3.0, -1.0, 0.0, 1.0, 3.0, 0.0];
        let b: Vec<f64> = a
            .iter()
            .enumerate()
            .map(|(i, v)| v + 1e-4 * [1.0, -1.0, 2.0, -2.0, 1.0, -1.0][i])
            .collect();
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 6]),
            ("a", ColumnRole::Quantitative, a),
            ("b", ColumnRole::Quantitative, b),
        ]);
        let mut previous_none = false;
        for cn in [5.0, 30.0, 1e3, 1e5, 1e7, 1e9] {
            let options = DiagnoseOptions {
                thresholds: ThresholdConfig {
                    cn_problematic: cn,
                    ..Default::default()
                },
                ..Default::default()
            };
            let report = diagnose(&x, None, &options).unwrap();
            let is_none = report.verdict.kind == VerdictKind::None;
            if previous_none {
                assert!(is_none, "verdict reappeared at threshold {cn}");
            }
            previous_none = is_none;
        }
    }

    #[test]
    fn y_produces_model_r_squared() {
        let x = orthogonal_design();
        let y = vec![1.0, 2.0, 3.0, 4.0];
        let report = diagnose(&x, Some(&y), &DiagnoseOptions::default()).unwrap();
        let r2 = report.model_r_squared.unwrap();
        assert!((0.0..=1.0).contains(&r2));
    }
}
