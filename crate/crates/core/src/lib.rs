//! Collinearity diagnostics for linear regression designs.
//!
//! The crate detects near-multicollinearity in a design matrix and, unlike
//! most tooling, treats qualitative (dummy) regressors and the intercept
//! correctly:
//!
//! - VIFs and the correlation matrix are restricted to quantitative
//!   regressors by default (a VIF's auxiliary regression is not a linear
//!   model when its response is dichotomous); a legacy flag restores the
//!   indiscriminate behavior of older tooling.
//! - The Stewart index (the "uncentered VIF") and the condition numbers act
//!   on the non-centered unit-length design, so they cover dummies and the
//!   intercept.
//! - Detected collinearity is classified as essential (among regressors) or
//!   non-essential (with the intercept) via the Belsley variance
//!   decomposition, and the two-column model gets a dedicated path instead
//!   of the "fewer than 2 terms" failure.
//!
//! Entry points: [`load_csv`] -> [`infer_roles`] -> [`DesignMatrix::build`]
//! -> [`diagnose`] -> [`render`].

pub mod dataset;
pub mod diagnose;
pub mod error;
pub mod measures;
pub mod numerics;
pub mod render;
pub mod thresholds;

pub use dataset::{
    infer_roles, load_csv, Column, ColumnRole, Dataset, DesignMatrix, RoleOverride, ScalingMode,
};
pub use diagnose::{
    diagnose, ColumnSummary, DiagnoseOptions, DiagnosticsReport, MeasureOutcome, VariabilityEntry,
    VariabilityTable, Verdict, VerdictKind,
};
pub use error::{DataError, Error, MeasureError, NumericsError};
pub use measures::{
    belsley, coefficient_of_variation, condition_number, condition_number_with_scaling,
    correlation_report, dummy_cn, proportion_of_ones, slm_diagnostics, stewart_table, vif_table,
    BelsleyTable, CorrelationReport, FlaggedPair, SlmReport, SlmVariability, StewartEntry,
    StewartTable, VifEntry, VifTable,
};
pub use numerics::{
    crossprod, det_spd, invert_spd, ols, sym_eigen, EigenDecomposition, OlsFit, SymmetricMatrix,
};
pub use render::{render, Format};
pub use thresholds::{Evidence, ThresholdConfig};
