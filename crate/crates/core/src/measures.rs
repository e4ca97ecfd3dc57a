//! The collinearity measures: correlation matrix and determinant, VIF,
//! Stewart index, condition numbers, Belsley variance decomposition,
//! coefficient of variation, and the closed-form dummy condition number.
//!
//! Applicability follows column roles. VIF and the correlation matrix are
//! quantitative-only by default because the auxiliary fit behind a VIF is
//! not a linear model when the response is dichotomous; a legacy flag
//! re-admits dummy columns where other tooling computes them anyway. The
//! Stewart index and the condition numbers act on the non-centered
//! unit-length design, so they apply to dummies and the intercept alike.

use serde::{Deserialize, Serialize};

use crate::dataset::{Column, ColumnRole, DesignMatrix, ScalingMode};
use crate::error::{MeasureError, NumericsError};
use crate::numerics::{crossprod, det_spd, invert_spd, ols, sym_eigen};
use crate::thresholds::{Evidence, ThresholdConfig};

/// Pairwise Pearson correlations among eligible regressors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationReport {
    /// Labels of the correlated columns, design order.
    pub names: Vec<String>,
    /// Symmetric with unit diagonal; `matrix[i][j]` pairs `names[i]`,
    /// `names[j]`.
    pub matrix: Vec<Vec<f64>>,
    /// Determinant of the correlation matrix, clamped to `[0, 1]`.
    pub determinant: f64,
    /// Pairs whose absolute correlation meets the threshold.
    pub flagged_pairs: Vec<FlaggedPair>,
    /// Threshold the pairs were screened against.
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlaggedPair {
    pub first: String,
    pub second: String,
    pub abs_correlation: f64,
}

/// Per-column VIF outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VifEntry {
    /// `vif = 1 / (1 - R^2)` from the auxiliary regression of the column on
    /// every other regressor plus the intercept.
    Applicable {
        name: String,
        aux_r_squared: f64,
        vif: f64,
    },
    /// Auxiliary fit is exact: the column is a linear combination of the
    /// other regressors.
    Infinite { name: String, aux_r_squared: f64 },
    /// The measure does not apply to this column.
    NotApplicable { name: String, reason: String },
}

impl VifEntry {
    pub fn name(&self) -> &str {
        match self {
            VifEntry::Applicable { name, .. }
            | VifEntry::Infinite { name, .. }
            | VifEntry::NotApplicable { name, .. } => name,
        }
    }

    pub fn vif(&self) -> Option<f64> {
        match self {
            VifEntry::Applicable { vif, .. } => Some(*vif),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VifTable {
    /// One entry per non-intercept design column, design order.
    pub entries: Vec<VifEntry>,
}

impl VifTable {
    pub fn get(&self, name: &str) -> Option<&VifEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }
}

/// Stewart indices: the diagonal of the inverse cross-product of the
/// unit-length design, intercept included.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StewartTable {
    pub entries: Vec<StewartEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StewartEntry {
    pub name: String,
    pub kappa_squared: f64,
}

impl StewartTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.kappa_squared)
    }
}

/// Condition indexes with the matching variance decomposition proportions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BelsleyTable {
    /// Design column labels, intercept first.
    pub column_names: Vec<String>,
    /// Ascending; first entry is exactly 1, last is the condition number.
    pub condition_indexes: Vec<f64>,
    /// `vdp[i][j]`: share of coefficient j's variance attributed to the i-th
    /// condition index. Every column sums to 1.
    pub vdp: Vec<Vec<f64>>,
}

/// Variability summary for the lone regressor of a simple linear model.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "measure", rename_all = "snake_case")]
pub enum SlmVariability {
    CoefficientOfVariation { value: f64 },
    ProportionOfOnes { value: f64 },
    Unavailable { reason: String },
}

/// Diagnostics for the k = 2 (intercept plus one regressor) model.
///
/// The only possible near-collinearity here is between the regressor and the
/// intercept, so a problematic finding is always non-essential.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlmReport {
    pub regressor: String,
    pub regressor_role: ColumnRole,
    pub cn_with_intercept: f64,
    pub stewart_intercept: f64,
    pub stewart_regressor: f64,
    pub variability: SlmVariability,
    /// `sqrt((1 + sqrt(p)) / (1 - sqrt(p)))`; present iff the regressor is a
    /// dummy with proportion of ones p.
    pub closed_form_cn: Option<f64>,
    pub problematic: bool,
    pub evidence: Vec<Evidence>,
}

fn eligible_for_quantitative_measure(role: ColumnRole, include_dummies: bool) -> bool {
    match role {
        ColumnRole::Quantitative => true,
        ColumnRole::Dummy => include_dummies,
        ColumnRole::Intercept => false,
    }
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut da = 0.0;
    let mut db = 0.0;
    for (x, y) in a.iter().zip(b) {
        let cx = x - ma;
        let cy = y - mb;
        num += cx * cy;
        da += cx * cx;
        db += cy * cy;
    }
    num / (da.sqrt() * db.sqrt())
}

/// Pairwise correlations (and their determinant) among the eligible
/// regressors: quantitative columns, plus dummies when `include_dummies`
/// asks for the legacy behavior. The intercept never participates.
pub fn correlation_report(
    x: &DesignMatrix,
    threshold: f64,
    include_dummies: bool,
) -> Result<CorrelationReport, MeasureError> {
    let eligible: Vec<&Column> = x
        .columns()
        .iter()
        .filter(|c| eligible_for_quantitative_measure(c.role, include_dummies))
        .collect();
    if eligible.len() < 2 {
        return Err(MeasureError::NotEnoughColumns {
            measure: "correlation matrix",
            needed: 2,
            got: eligible.len(),
        });
    }
    let m = eligible.len();
    let mut matrix = vec![vec![0.0; m]; m];
    for i in 0..m {
        matrix[i][i] = 1.0;
        for j in (i + 1)..m {
            let r = pearson(&eligible[i].values, &eligible[j].values);
            matrix[i][j] = r;
            matrix[j][i] = r;
        }
    }
    let sym = crate::numerics::SymmetricMatrix::from_upper(m, |i, j| matrix[i][j]);
    let determinant = det_spd(&sym)?.clamp(0.0, 1.0);
    let mut flagged_pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let r = matrix[i][j].abs();
            if r >= threshold {
                flagged_pairs.push(FlaggedPair {
                    first: eligible[i].name.clone(),
                    second: eligible[j].name.clone(),
                    abs_correlation: r,
                });
            }
        }
    }
    Ok(CorrelationReport {
        names: eligible.iter().map(|c| c.name.clone()).collect(),
        matrix,
        determinant,
        flagged_pairs,
        threshold,
    })
}

/// Variance inflation factors.
///
/// Each eligible column is regressed on the intercept plus every other
/// non-intercept column (dummies stay on the predictor side regardless of
/// the flag; only the response side is role-restricted). With a single
/// regressor the auxiliary fit is against the intercept alone and explains
/// nothing, so the VIF is 1 by construction.
pub fn vif_table(x: &DesignMatrix, include_dummies: bool) -> Result<VifTable, MeasureError> {
    if !x.has_intercept() {
        return Err(MeasureError::InterceptRequired { measure: "VIF" });
    }
    let regressors: Vec<usize> = (0..x.k()).filter(|&j| j != 0).collect();
    if regressors.is_empty() {
        return Err(MeasureError::NotEnoughColumns {
            measure: "VIF",
            needed: 1,
            got: 0,
        });
    }
    let responses: Vec<usize> = regressors
        .iter()
        .copied()
        .filter(|&j| eligible_for_quantitative_measure(x.column(j).role, include_dummies))
        .collect();
    if responses.is_empty() {
        return Err(MeasureError::NoQuantitativeColumns { measure: "VIF" });
    }

    let mut entries = Vec::with_capacity(regressors.len());
    for &j in &regressors {
        let col = x.column(j);
        if !responses.contains(&j) {
            entries.push(VifEntry::NotApplicable {
                name: col.name.clone(),
                reason: "dummy regressor: the auxiliary fit would have a dichotomous response"
                    .into(),
            });
            continue;
        }
        let predictors: Vec<Column> = x
            .columns()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, c)| c.clone())
            .collect();
        let aux_r_squared = if predictors.len() == 1 {
            // intercept alone: the auxiliary regression explains none of the
            // column's variance
            0.0
        } else {
            let aux = DesignMatrix::from_columns(predictors)
                .expect("auxiliary design reuses validated columns");
            ols(&aux, &col.values)?.r_squared
        };
        let vif = 1.0 / (1.0 - aux_r_squared);
        if vif.is_finite() {
            entries.push(VifEntry::Applicable {
                name: col.name.clone(),
                aux_r_squared,
                vif,
            });
        } else {
            entries.push(VifEntry::Infinite {
                name: col.name.clone(),
                aux_r_squared,
            });
        }
    }
    Ok(VifTable { entries })
}

/// Stewart indices for every design column, intercept included.
///
/// The design is unit-length scaled without centering and the index is the
/// diagonal of the inverse cross-product, so the measure is defined for
/// dummies and the intercept alike.
pub fn stewart_table(x: &DesignMatrix) -> Result<StewartTable, MeasureError> {
    if !x.has_intercept() {
        return Err(MeasureError::InterceptRequired {
            measure: "Stewart index",
        });
    }
    let scaled = x
        .scaled(ScalingMode::UnitLength)
        .expect("unit-length scaling cannot fail on a valid design");
    let s = crossprod(&scaled);
    let inv = invert_spd(&s).map_err(|e| match e {
        NumericsError::RankDeficient { .. } => NumericsError::RankDeficient {
            context: format!("design columns {:?} are collinear", x.names()),
        },
        other => other,
    })?;
    let entries = x
        .columns()
        .iter()
        .enumerate()
        .map(|(j, c)| StewartEntry {
            name: c.name.clone(),
            // mathematically >= 1 for a unit-diagonal SPD matrix; the max
            // guards the stored invariant against rounding
            kappa_squared: inv.get(j, j).max(1.0),
        })
        .collect();
    Ok(StewartTable { entries })
}

/// Condition number of the unit-length-scaled design, with or without its
/// intercept column.
pub fn condition_number(x: &DesignMatrix, with_intercept: bool) -> Result<f64, MeasureError> {
    condition_number_with_scaling(x, with_intercept, ScalingMode::UnitLength)
}

/// Condition number under an explicit scaling. `Raw` exposes the
/// scale-dependent eigenvalues of `X^T X`; `UnitLength` is the standard
/// diagnostic.
pub fn condition_number_with_scaling(
    x: &DesignMatrix,
    with_intercept: bool,
    mode: ScalingMode,
) -> Result<f64, MeasureError> {
    let retained = if with_intercept {
        x.clone()
    } else {
        x.without_intercept()
            .map_err(|_| MeasureError::NotEnoughColumns {
                measure: "condition number",
                needed: 1,
                got: 0,
            })?
    };
    let scaled = retained
        .scaled(mode)
        .map_err(|_| MeasureError::NotEnoughColumns {
            measure: "condition number",
            needed: 1,
            got: 0,
        })?;
    let eig = sym_eigen(&crossprod(&scaled))?;
    if eig.is_rank_deficient() {
        return Err(MeasureError::Numerics(NumericsError::RankDeficient {
            context: format!(
                "condition number is unbounded: columns {:?} are collinear",
                retained.names()
            ),
        }));
    }
    Ok((eig.max() / eig.min()).sqrt())
}

/// Condition indexes and variance decomposition proportions of the
/// unit-length design (intercept included).
pub fn belsley(x: &DesignMatrix) -> Result<BelsleyTable, MeasureError> {
    if !x.has_intercept() {
        return Err(MeasureError::InterceptRequired {
            measure: "variance decomposition",
        });
    }
    let scaled = x
        .scaled(ScalingMode::UnitLength)
        .expect("unit-length scaling cannot fail on a valid design");
    let eig = sym_eigen(&crossprod(&scaled))?;
    if eig.is_rank_deficient() {
        return Err(MeasureError::Numerics(NumericsError::RankDeficient {
            context: format!(
                "variance decomposition is undefined: columns {:?} are collinear",
                x.names()
            ),
        }));
    }
    let k = x.k();
    // eigenvalues arrive descending, so d_max/d_i is already ascending and
    // the first index is exactly 1
    let d_max = eig.eigenvalues[0].sqrt();
    let condition_indexes: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|lambda| d_max / lambda.sqrt())
        .collect();
    // phi[i][j] = v_ji^2 / lambda_i; each coefficient's proportions are
    // normalized over the indexes
    let mut vdp = vec![vec![0.0; k]; k];
    for j in 0..k {
        let mut total = 0.0;
        for i in 0..k {
            let v = eig.eigenvectors[i][j];
            let phi = v * v / eig.eigenvalues[i];
            vdp[i][j] = phi;
            total += phi;
        }
        for row in vdp.iter_mut() {
            row[j] /= total;
        }
    }
    Ok(BelsleyTable {
        column_names: x.names().iter().map(|s| s.to_string()).collect(),
        condition_indexes,
        vdp,
    })
}

/// Coefficient of variation: sample standard deviation (divisor n - 1) over
/// the absolute mean.
pub fn coefficient_of_variation(name: &str, values: &[f64]) -> Result<f64, MeasureError> {
    let n = values.len();
    if n < 2 || values.windows(2).all(|w| w[0] == w[1]) {
        return Err(MeasureError::ConstantColumn {
            name: name.to_owned(),
        });
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if mean.abs() <= 1e-12 * max_abs {
        return Err(MeasureError::ZeroMean {
            name: name.to_owned(),
        });
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
    Ok(var.sqrt() / mean.abs())
}

/// Share of ones in a dummy column.
pub fn proportion_of_ones(values: &[f64]) -> f64 {
    values.iter().filter(|&&v| v == 1.0).count() as f64 / values.len() as f64
}

/// Closed-form condition number of an intercept-plus-dummy design with
/// proportion of ones `p`: `sqrt((1 + sqrt(p)) / (1 - sqrt(p)))`.
///
/// Strictly increasing in `p`; unbounded as `p` approaches 1 (the dummy
/// collapses into the intercept).
pub fn dummy_cn(p: f64) -> Result<f64, MeasureError> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(MeasureError::InvalidProportion { p });
    }
    let r = p.sqrt();
    Ok(((1.0 + r) / (1.0 - r)).sqrt())
}

/// Diagnostics for a simple linear model: intercept plus one regressor.
///
/// Uses the condition number, the Stewart index, and either the coefficient
/// of variation (quantitative regressor) or the proportion of ones (dummy
/// regressor, with the closed-form condition number as a cross-check).
pub fn slm_diagnostics(
    x: &DesignMatrix,
    thresholds: &ThresholdConfig,
) -> Result<SlmReport, MeasureError> {
    if x.k() != 2 || !x.has_intercept() {
        return Err(MeasureError::NotSimpleLinearModel {
            k: x.k(),
            has_intercept: x.has_intercept(),
        });
    }
    let regressor = x.column(1);
    let cn = condition_number(x, true)?;
    let stewart = stewart_table(x)?;
    let stewart_intercept = stewart.entries[0].kappa_squared;
    let stewart_regressor = stewart.entries[1].kappa_squared;

    let mut evidence = Vec::new();
    let (variability, closed_form_cn, problematic) = match regressor.role {
        ColumnRole::Dummy => {
            let p = proportion_of_ones(&regressor.values);
            let closed = dummy_cn(p)?;
            let problematic = p >= thresholds.dummy_proportion;
            if problematic {
                evidence.push(Evidence::new(
                    format!("proportion_of_ones:{}", regressor.name),
                    p,
                    thresholds.dummy_proportion,
                ));
                evidence.push(Evidence::new(
                    "condition_number",
                    cn,
                    thresholds.cn_problematic,
                ));
            }
            (
                SlmVariability::ProportionOfOnes { value: p },
                Some(closed),
                problematic,
            )
        }
        _ => {
            let variability =
                match coefficient_of_variation(&regressor.name, &regressor.values) {
                    Ok(cv) => SlmVariability::CoefficientOfVariation { value: cv },
                    Err(e) => SlmVariability::Unavailable {
                        reason: e.to_string(),
                    },
                };
            let problematic = cn >= thresholds.cn_problematic;
            if problematic {
                evidence.push(Evidence::new(
                    "condition_number",
                    cn,
                    thresholds.cn_problematic,
                ));
                if let SlmVariability::CoefficientOfVariation { value } = variability {
                    if value < thresholds.cv {
                        evidence.push(Evidence::new(
                            format!("cv:{}", regressor.name),
                            value,
                            thresholds.cv,
                        ));
                    }
                }
            }
            (variability, None, problematic)
        }
    };

    Ok(SlmReport {
        regressor: regressor.name.clone(),
        regressor_role: regressor.role,
        cn_with_intercept: cn,
        stewart_intercept,
        stewart_regressor,
        variability,
        closed_form_cn,
        problematic,
        evidence,
    })
}
