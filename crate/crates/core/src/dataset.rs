//! Tabular data ingestion, column roles, and design-matrix construction.
//!
//! A [`Dataset`] holds raw columns as read from CSV. Roles are inferred (or
//! overridden) per column, and a [`DesignMatrix`] is assembled from the
//! dataset, optionally with a prepended intercept. The three scalings used by
//! the diagnostic measures live in [`ScalingMode`].

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::DataError;

/// How a design column enters the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnRole {
    /// Column of ones.
    Intercept,
    /// Ordinary real-valued regressor.
    Quantitative,
    /// Binary 0/1 regressor with both values present.
    Dummy,
}

impl ColumnRole {
    pub fn as_str(self) -> &'static str {
        match self {
            ColumnRole::Intercept => "intercept",
            ColumnRole::Quantitative => "quantitative",
            ColumnRole::Dummy => "dummy",
        }
    }
}

impl fmt::Display for ColumnRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Column scaling applied before computing a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMode {
    /// Columns as observed.
    Raw,
    /// Each column divided by its Euclidean norm.
    UnitLength,
    /// Each column centered by its mean, then divided by the Euclidean norm
    /// of the centered values. Not defined for intercept/constant columns.
    CenteredUnitLength,
}

/// Raw tabular data: named columns over `n` observations.
#[derive(Debug, Clone)]
pub struct Dataset {
    names: Vec<String>,
    /// Column-major storage; every column has exactly `n` entries.
    columns: Vec<Vec<f64>>,
    n: usize,
}

impl Dataset {
    /// Builds a dataset from named columns, validating the invariants:
    /// unique non-empty names, equal finite columns, at least one row.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self, DataError> {
        assert_eq!(names.len(), columns.len(), "names/columns length mismatch");
        if names.is_empty() {
            return Err(DataError::EmptyDesign);
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(DataError::EmptyColumnName);
            }
            if names[..i].contains(name) {
                return Err(DataError::DuplicateColumn { name: name.clone() });
            }
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(DataError::NoObservations {
                path: "<memory>".into(),
            });
        }
        for (name, col) in names.iter().zip(&columns) {
            assert_eq!(col.len(), n, "column {name} length mismatch");
            if let Some(bad) = col.iter().find(|v| !v.is_finite()) {
                return Err(DataError::NonNumericCell {
                    row: 0,
                    column: name.clone(),
                    value: bad.to_string(),
                });
            }
        }
        Ok(Dataset { names, columns, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.position(name).map(|i| self.columns[i].as_slice())
    }

    pub fn column_at(&self, index: usize) -> &[f64] {
        &self.columns[index]
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Restricts the dataset to the given columns, in the given order.
    pub fn select(&self, names: &[String]) -> Result<Dataset, DataError> {
        let mut sel_names = Vec::with_capacity(names.len());
        let mut sel_cols = Vec::with_capacity(names.len());
        for name in names {
            let idx = self
                .position(name)
                .ok_or_else(|| DataError::UnknownColumn { name: name.clone() })?;
            sel_names.push(name.clone());
            sel_cols.push(self.columns[idx].clone());
        }
        Dataset::new(sel_names, sel_cols)
    }

    /// Drops the named column if present; no-op otherwise.
    pub fn without(&self, name: &str) -> Dataset {
        let mut names = Vec::new();
        let mut cols = Vec::new();
        for (n, c) in self.names.iter().zip(&self.columns) {
            if n != name {
                names.push(n.clone());
                cols.push(c.clone());
            }
        }
        Dataset {
            n: self.n,
            names,
            columns: cols,
        }
    }
}

/// Reads a CSV file (UTF-8, header row, decimal numbers, LF or CRLF) and
/// splits off the dependent column.
///
/// Returns the remaining columns as a [`Dataset`] together with the dependent
/// vector, row order preserved. Ragged rows and non-numeric cells are
/// reported with their file line (the header is line 1).
pub fn load_csv<P: AsRef<Path>>(
    path: P,
    dependent: &str,
) -> Result<(Dataset, Vec<f64>), DataError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| DataError::Io {
        path: path_str.clone(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| DataError::Csv {
            path: path_str.clone(),
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_owned)
        .collect();
    for (i, name) in headers.iter().enumerate() {
        if name.is_empty() {
            return Err(DataError::EmptyColumnName);
        }
        if headers[..i].contains(name) {
            return Err(DataError::DuplicateColumn { name: name.clone() });
        }
    }
    let dep_idx = headers
        .iter()
        .position(|h| h == dependent)
        .ok_or_else(|| DataError::UnknownColumn {
            name: dependent.to_owned(),
        })?;

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); headers.len()];
    for (rec_idx, record) in reader.records().enumerate() {
        // header occupies line 1, so data record i sits on line i + 2
        let line = rec_idx + 2;
        let record = record.map_err(|e| DataError::Csv {
            path: path_str.clone(),
            message: e.to_string(),
        })?;
        for (col_idx, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| DataError::NonNumericCell {
                row: line,
                column: headers[col_idx].clone(),
                value: cell.to_owned(),
            })?;
            if !value.is_finite() {
                return Err(DataError::NonNumericCell {
                    row: line,
                    column: headers[col_idx].clone(),
                    value: cell.to_owned(),
                });
            }
            columns[col_idx].push(value);
        }
    }
    if columns[dep_idx].is_empty() {
        return Err(DataError::NoObservations { path: path_str });
    }

    let dependent_values = columns[dep_idx].clone();
    let mut names = Vec::new();
    let mut kept = Vec::new();
    for (i, (name, col)) in headers.into_iter().zip(columns).enumerate() {
        if i != dep_idx {
            names.push(name);
            kept.push(col);
        }
    }
    let dataset = Dataset::new(names, kept)?;
    Ok((dataset, dependent_values))
}

/// Explicit role assignment for one column; wins over inference.
#[derive(Debug, Clone)]
pub struct RoleOverride {
    pub column: String,
    pub role: ColumnRole,
}

fn is_all_ones(values: &[f64]) -> bool {
    values.iter().all(|&v| v == 1.0)
}

fn is_binary(values: &[f64]) -> bool {
    values.iter().all(|&v| v == 0.0 || v == 1.0)
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

fn check_role(name: &str, role: ColumnRole, values: &[f64]) -> Result<(), DataError> {
    match role {
        ColumnRole::Intercept => {
            if !is_all_ones(values) {
                return Err(DataError::RoleMismatch {
                    name: name.to_owned(),
                    role: "intercept",
                    detail: "column is not all ones".into(),
                });
            }
        }
        ColumnRole::Dummy => {
            if !is_binary(values) {
                return Err(DataError::RoleMismatch {
                    name: name.to_owned(),
                    role: "dummy",
                    detail: "values outside {0, 1}".into(),
                });
            }
            if is_constant(values) {
                return Err(DataError::RoleMismatch {
                    name: name.to_owned(),
                    role: "dummy",
                    detail: "both 0 and 1 must be present".into(),
                });
            }
        }
        ColumnRole::Quantitative => {
            if is_constant(values) {
                return Err(DataError::ConstantColumn {
                    name: name.to_owned(),
                    value: values[0],
                });
            }
        }
    }
    Ok(())
}

/// Assigns a role to every dataset column.
///
/// All-ones columns become `Intercept`; {0,1} columns with both values
/// present become `Dummy`; everything else is `Quantitative`. Explicit
/// overrides win but are validated against the data. Constant columns other
/// than all-ones are rejected.
pub fn infer_roles(
    dataset: &Dataset,
    overrides: &[RoleOverride],
) -> Result<Vec<ColumnRole>, DataError> {
    for o in overrides {
        if !dataset.names().iter().any(|n| n == &o.column) {
            return Err(DataError::UnknownOverride {
                name: o.column.clone(),
            });
        }
    }
    let mut roles = Vec::with_capacity(dataset.m());
    for (name, values) in dataset.names().iter().zip(0..dataset.m()) {
        let values = dataset.column_at(values);
        let forced = overrides.iter().find(|o| &o.column == name);
        let role = match forced {
            Some(o) => {
                check_role(name, o.role, values)?;
                o.role
            }
            None => {
                if is_all_ones(values) {
                    ColumnRole::Intercept
                } else if is_binary(values) && !is_constant(values) {
                    ColumnRole::Dummy
                } else if is_constant(values) {
                    return Err(DataError::ConstantColumn {
                        name: name.clone(),
                        value: values[0],
                    });
                } else {
                    ColumnRole::Quantitative
                }
            }
        };
        roles.push(role);
    }
    Ok(roles)
}

/// One named, role-tagged design column.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub role: ColumnRole,
    pub values: Vec<f64>,
}

/// The model's X: ordered design columns over `n` observations.
///
/// At most one intercept column, always first. Immutable after construction.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    columns: Vec<Column>,
    n: usize,
}

impl DesignMatrix {
    /// Assembles a design from a dataset and validated roles.
    ///
    /// With `include_intercept`, an all-ones column named `"intercept"` is
    /// prepended; supplying a data column that is itself all ones alongside
    /// that request is an error. A data intercept, if present, is moved to
    /// the front; the remaining column order is preserved.
    pub fn build(
        dataset: &Dataset,
        roles: &[ColumnRole],
        include_intercept: bool,
    ) -> Result<DesignMatrix, DataError> {
        if roles.len() != dataset.m() {
            return Err(DataError::RoleCountMismatch {
                expected: dataset.m(),
                got: roles.len(),
            });
        }
        let n = dataset.n();
        let mut intercepts: Vec<Column> = Vec::new();
        let mut rest: Vec<Column> = Vec::new();
        for (i, (name, &role)) in dataset.names().iter().zip(roles).enumerate() {
            let values = dataset.column_at(i).to_vec();
            check_role(name, role, &values)?;
            let column = Column {
                name: name.clone(),
                role,
                values,
            };
            if role == ColumnRole::Intercept {
                intercepts.push(column);
            } else {
                rest.push(column);
            }
        }
        if include_intercept && !intercepts.is_empty() {
            return Err(DataError::DuplicateIntercept {
                name: intercepts[0].name.clone(),
            });
        }
        if intercepts.len() > 1 {
            return Err(DataError::DuplicateIntercept {
                name: intercepts[1].name.clone(),
            });
        }
        let mut columns = Vec::with_capacity(rest.len() + 1);
        if include_intercept {
            if dataset.names().iter().any(|n| n == "intercept") {
                return Err(DataError::DuplicateColumn {
                    name: "intercept".into(),
                });
            }
            columns.push(Column {
                name: "intercept".into(),
                role: ColumnRole::Intercept,
                values: vec![1.0; n],
            });
        } else {
            columns.extend(intercepts);
        }
        columns.extend(rest);
        if columns.is_empty() {
            return Err(DataError::EmptyDesign);
        }
        Ok(DesignMatrix { columns, n })
    }

    /// Builds a design directly from prepared columns. Used internally and by
    /// tests; enforces the same invariants as [`DesignMatrix::build`].
    pub fn from_columns(columns: Vec<Column>) -> Result<DesignMatrix, DataError> {
        if columns.is_empty() {
            return Err(DataError::EmptyDesign);
        }
        let n = columns[0].values.len();
        for (i, c) in columns.iter().enumerate() {
            assert_eq!(c.values.len(), n, "column {} length mismatch", c.name);
            if c.name.is_empty() {
                return Err(DataError::EmptyColumnName);
            }
            if columns[..i].iter().any(|p| p.name == c.name) {
                return Err(DataError::DuplicateColumn {
                    name: c.name.clone(),
                });
            }
            check_role(&c.name, c.role, &c.values)?;
            if c.role == ColumnRole::Intercept {
                if i != 0 {
                    return Err(DataError::DuplicateIntercept {
                        name: c.name.clone(),
                    });
                }
            }
        }
        Ok(DesignMatrix { columns, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of design columns, intercept included.
    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, index: usize) -> &Column {
        &self.columns[index]
    }

    pub fn has_intercept(&self) -> bool {
        self.columns
            .first()
            .is_some_and(|c| c.role == ColumnRole::Intercept)
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn roles(&self) -> Vec<ColumnRole> {
        self.columns.iter().map(|c| c.role).collect()
    }

    /// The design without its intercept column (identity when none present).
    pub fn without_intercept(&self) -> Result<DesignMatrix, DataError> {
        let columns: Vec<Column> = self
            .columns
            .iter()
            .filter(|c| c.role != ColumnRole::Intercept)
            .cloned()
            .collect();
        if columns.is_empty() {
            return Err(DataError::EmptyDesign);
        }
        Ok(DesignMatrix { columns, n: self.n })
    }

    /// Applies a [`ScalingMode`] to every column, preserving names and roles.
    pub fn scaled(&self, mode: ScalingMode) -> Result<DesignMatrix, DataError> {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let values = scale_column(&c.name, c.role, &c.values, mode)?;
                Ok(Column {
                    name: c.name.clone(),
                    role: c.role,
                    values,
                })
            })
            .collect::<Result<Vec<_>, DataError>>()?;
        Ok(DesignMatrix { columns, n: self.n })
    }
}

fn norm2(values: &[f64]) -> f64 {
    values.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn scale_column(
    name: &str,
    role: ColumnRole,
    values: &[f64],
    mode: ScalingMode,
) -> Result<Vec<f64>, DataError> {
    match mode {
        ScalingMode::Raw => Ok(values.to_vec()),
        ScalingMode::UnitLength => {
            let norm = norm2(values);
            if norm == 0.0 {
                return Err(DataError::CenteredConstant {
                    name: name.to_owned(),
                });
            }
            Ok(values.iter().map(|v| v / norm).collect())
        }
        ScalingMode::CenteredUnitLength => {
            if role == ColumnRole::Intercept {
                return Err(DataError::CenteredConstant {
                    name: name.to_owned(),
                });
            }
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();
            let norm = norm2(&centered);
            if norm <= f64::EPSILON * values.len() as f64 {
                return Err(DataError::CenteredConstant {
                    name: name.to_owned(),
                });
            }
            Ok(centered.into_iter().map(|v| v / norm).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theil_path() -> String {
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/theil.csv").to_owned()
    }

    #[test]
    fn load_theil_splits_dependent() {
        let (ds, y) = load_csv(theil_path(), "consume").unwrap();
        assert_eq!(ds.n(), 17);
        assert_eq!(ds.names(), ["year", "income", "relprice", "twentys"]);
        assert_eq!(y.len(), 17);
        assert_eq!(y[0], 99.2);
        assert_eq!(ds.column("income").unwrap()[16], 103.8);
    }

    #[test]
    fn header_only_file_is_no_observations() {
        let dir = std::env::temp_dir();
        let path = dir.join("collindiag_header_only.csv");
        std::fs::write(&path, "a,b\n").unwrap();
        let err = load_csv(&path, "a").unwrap_err();
        assert!(matches!(err, DataError::NoObservations { .. }), "{err}");
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let dir = std::env::temp_dir();
        let path = dir.join("collindiag_bad_cell.csv");
        std::fs::write(&path, "a,b\n1,2\n3,abc\n").unwrap();
        let err = load_csv(&path, "a").unwrap_err();
        match err {
            DataError::NonNumericCell { row, column, value } => {
                assert_eq!(row, 3);
                assert_eq!(column, "b");
                assert_eq!(value, "abc");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn ragged_row_is_rejected() {
        let dir = std::env::temp_dir();
        let path = dir.join("collindiag_ragged.csv");
        std::fs::write(&path, "a,b\n1,2\n3\n").unwrap();
        let err = load_csv(&path, "a").unwrap_err();
        assert!(matches!(err, DataError::Csv { .. }), "{err}");
    }

    #[test]
    fn unknown_dependent_is_rejected() {
        let err = load_csv(theil_path(), "nope").unwrap_err();
        assert!(matches!(err, DataError::UnknownColumn { .. }), "{err}");
    }

    #[test]
    fn crlf_and_nan_cells() {
        let dir = std::env::temp_dir();
        let path = dir.join("collindiag_crlf.csv");
        std::fs::write(&path, "a,b\r\n1,2\r\n3,4\r\n").unwrap();
        let (ds, y) = load_csv(&path, "b").unwrap();
        assert_eq!(ds.n(), 2);
        assert_eq!(y, vec![2.0, 4.0]);

        let path = dir.join("collindiag_nan.csv");
        std::fs::write(&path, "a,b\n1,NaN\n").unwrap();
        let err = load_csv(&path, "a").unwrap_err();
        assert!(matches!(err, DataError::NonNumericCell { .. }), "{err}");
    }

    #[test]
    fn roles_for_theil_columns() {
        let (ds, _) = load_csv(theil_path(), "consume").unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        assert_eq!(
            roles,
            [
                ColumnRole::Quantitative, // year
                ColumnRole::Quantitative, // income
                ColumnRole::Quantitative, // relprice
                ColumnRole::Dummy,        // twentys
            ]
        );
    }

    #[test]
    fn all_ones_column_is_intercept() {
        let ds = Dataset::new(
            vec!["c".into(), "x".into()],
            vec![vec![1.0, 1.0, 1.0], vec![0.5, 1.5, 2.5]],
        )
        .unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        assert_eq!(roles[0], ColumnRole::Intercept);
        assert_eq!(roles[1], ColumnRole::Quantitative);
    }

    #[test]
    fn constant_non_one_column_is_rejected() {
        let ds = Dataset::new(
            vec!["k".into(), "x".into()],
            vec![vec![5.0, 5.0], vec![1.0, 2.0]],
        )
        .unwrap();
        let err = infer_roles(&ds, &[]).unwrap_err();
        assert!(matches!(err, DataError::ConstantColumn { .. }), "{err}");
    }

    #[test]
    fn override_wins_over_inference() {
        let ds = Dataset::new(
            vec!["d".into(), "x".into()],
            vec![vec![0.0, 1.0, 1.0], vec![0.5, 1.5, 2.5]],
        )
        .unwrap();
        let roles = infer_roles(
            &ds,
            &[RoleOverride {
                column: "d".into(),
                role: ColumnRole::Quantitative,
            }],
        )
        .unwrap();
        assert_eq!(roles[0], ColumnRole::Quantitative);
    }

    #[test]
    fn override_inconsistent_with_data_is_rejected() {
        let ds = Dataset::new(vec!["x".into()], vec![vec![0.5, 1.5, 2.5]]).unwrap();
        let err = infer_roles(
            &ds,
            &[RoleOverride {
                column: "x".into(),
                role: ColumnRole::Dummy,
            }],
        )
        .unwrap_err();
        assert!(matches!(err, DataError::RoleMismatch { .. }), "{err}");
    }

    #[test]
    fn build_full_theil_design() {
        let (ds, _) = load_csv(theil_path(), "consume").unwrap();
        let ds = ds.without("year");
        let roles = infer_roles(&ds, &[]).unwrap();
        let x = DesignMatrix::build(&ds, &roles, true).unwrap();
        assert_eq!(x.k(), 4);
        assert_eq!(x.names(), ["intercept", "income", "relprice", "twentys"]);
        assert!(x.has_intercept());
        // roles survive design construction unchanged
        assert_eq!(
            &x.roles()[1..],
            &roles[..],
            "dataset roles must be preserved"
        );
    }

    #[test]
    fn build_slm_design() {
        let (ds, _) = load_csv(theil_path(), "consume").unwrap();
        let ds = ds.select(&["income".into()]).unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        let x = DesignMatrix::build(&ds, &roles, true).unwrap();
        assert_eq!(x.k(), 2);
        assert_eq!(x.names(), ["intercept", "income"]);
    }

    #[test]
    fn build_single_column_no_intercept() {
        let ds = Dataset::new(vec!["x".into()], vec![vec![0.5, 1.5, 2.5]]).unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        let x = DesignMatrix::build(&ds, &roles, false).unwrap();
        assert_eq!(x.k(), 1);
        assert!(!x.has_intercept());
    }

    #[test]
    fn duplicate_intercept_is_rejected() {
        let ds = Dataset::new(
            vec!["c".into(), "x".into()],
            vec![vec![1.0, 1.0, 1.0], vec![0.5, 1.5, 2.5]],
        )
        .unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        let err = DesignMatrix::build(&ds, &roles, true).unwrap_err();
        assert!(matches!(err, DataError::DuplicateIntercept { .. }), "{err}");
    }

    #[test]
    fn data_intercept_moves_to_front() {
        let ds = Dataset::new(
            vec!["x".into(), "c".into()],
            vec![vec![0.5, 1.5, 2.5], vec![1.0, 1.0, 1.0]],
        )
        .unwrap();
        let roles = infer_roles(&ds, &[]).unwrap();
        let x = DesignMatrix::build(&ds, &roles, false).unwrap();
        assert_eq!(x.names(), ["c", "x"]);
        assert!(x.has_intercept());
    }

    #[test]
    fn unit_length_intercept_is_inv_sqrt_n() {
        let ds = Dataset::new(vec!["x".into()], vec![(1..=17).map(f64::from).collect()]).unwrap();
        let x = DesignMatrix::build(&ds, &[ColumnRole::Quantitative], true).unwrap();
        let scaled = x.scaled(ScalingMode::UnitLength).unwrap();
        let expect = 1.0 / 17.0f64.sqrt();
        for v in &scaled.column(0).values {
            assert!((v - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_length_dummy_entries() {
        let values = vec![1.0, 0.0, 1.0, 0.0, 1.0];
        let ds = Dataset::new(vec!["d".into()], vec![values]).unwrap();
        let x = DesignMatrix::build(&ds, &[ColumnRole::Dummy], false).unwrap();
        let scaled = x.scaled(ScalingMode::UnitLength).unwrap();
        let expect = 1.0 / 3.0f64.sqrt();
        for v in &scaled.column(0).values {
            assert!(*v == 0.0 || (*v - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn centered_unit_length_rejects_intercept() {
        let ds = Dataset::new(vec!["x".into()], vec![vec![0.5, 1.5, 2.5]]).unwrap();
        let x = DesignMatrix::build(&ds, &[ColumnRole::Quantitative], true).unwrap();
        let err = x.scaled(ScalingMode::CenteredUnitLength).unwrap_err();
        assert!(matches!(err, DataError::CenteredConstant { .. }), "{err}");
        // dropping the intercept first makes it fine
        let no_int = x.without_intercept().unwrap();
        let scaled = no_int.scaled(ScalingMode::CenteredUnitLength).unwrap();
        let col = &scaled.column(0).values;
        let mean: f64 = col.iter().sum::<f64>() / col.len() as f64;
        let norm: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(mean.abs() < 1e-12);
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
