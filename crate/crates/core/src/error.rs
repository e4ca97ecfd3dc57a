//! Error types shared across the crate.

use thiserror::Error;

/// Errors arising while ingesting data or assembling a design matrix.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV at {path}: {message}")]
    Csv { path: String, message: String },
    #[error("no observations: {path} contains a header but no data rows")]
    NoObservations { path: String },
    #[error("cell {value:?} at row {row}, column {column:?} is not a finite number")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("unknown column {name:?}")]
    UnknownColumn { name: String },
    #[error("duplicate column name {name:?}")]
    DuplicateColumn { name: String },
    #[error("empty column name in header")]
    EmptyColumnName,
    #[error("column {name:?} is constant ({value}); a zero-variance regressor carries no information")]
    ConstantColumn { name: String, value: f64 },
    #[error("duplicate intercept: column {name:?} is all ones and an intercept was also requested")]
    DuplicateIntercept { name: String },
    #[error("role {role} is inconsistent with the data in column {name:?}: {detail}")]
    RoleMismatch {
        name: String,
        role: &'static str,
        detail: String,
    },
    #[error("role override names unknown column {name:?}")]
    UnknownOverride { name: String },
    #[error("cannot center column {name:?}: centering an intercept or constant column yields the zero vector")]
    CenteredConstant { name: String },
    #[error("design must contain at least one column")]
    EmptyDesign,
    #[error("roles list has {got} entries but the dataset has {expected} columns")]
    RoleCountMismatch { expected: usize, got: usize },
}

/// Errors from the dense linear-algebra kernels.
#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("rank-deficient system: {context}")]
    RankDeficient { context: String },
    #[error("matrix is not positive definite: {context}")]
    NotPositiveDefinite { context: String },
    #[error("need more observations than design columns: n = {n}, k = {k}")]
    TooFewObservations { n: usize, k: usize },
}

/// Errors raised by the diagnostic measures themselves.
#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("{measure} needs at least {needed} eligible columns, found {got}")]
    NotEnoughColumns {
        measure: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("no quantitative regressors: {measure} is defined for quantitative columns only")]
    NoQuantitativeColumns { measure: &'static str },
    #[error("{measure} requires an intercept column in the design")]
    InterceptRequired { measure: &'static str },
    #[error("column {name:?} has (near-)zero mean; the coefficient of variation is undefined")]
    ZeroMean { name: String },
    #[error("column {name:?} is constant")]
    ConstantColumn { name: String },
    #[error("proportion of ones must lie strictly between 0 and 1, got {p}")]
    InvalidProportion { p: f64 },
    #[error("simple-linear-model diagnostics need exactly one intercept plus one regressor, got k = {k} (intercept: {has_intercept})")]
    NotSimpleLinearModel { k: usize, has_intercept: bool },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Top-level error for a full diagnostic run.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("invalid threshold configuration: {0}")]
    InvalidThresholds(String),
}

impl Error {
    /// True when the failure is numerical (rank deficiency, eigensolver
    /// breakdown) rather than a data or configuration problem. The CLI maps
    /// this distinction onto exit codes.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Numerics(_) => true,
            Error::Measure(MeasureError::Numerics(_)) => true,
            _ => false,
        }
    }
}
