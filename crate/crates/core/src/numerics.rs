//! Dense symmetric linear algebra for small design matrices.
//!
//! Everything here operates on the cross-product `X^T X` of a design, which
//! is at most a few dozen columns wide. A cyclic Jacobi eigensolver drives
//! the inverse, the determinant, and the singular values (obtained as square
//! roots of cross-product eigenvalues), so singularity detection is
//! consistent across every caller.

use crate::dataset::DesignMatrix;
use crate::error::NumericsError;

/// Relative eigenvalue threshold below which a matrix is treated as
/// rank-deficient: `lambda_min <= RANK_TOLERANCE * lambda_max`.
pub const RANK_TOLERANCE: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOLERANCE: f64 = 1e-14;

/// Dense symmetric matrix with exactly mirrored storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    // row-major, full storage; entries[i*order + j] == entries[j*order + i]
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from the upper triangle of `f(i, j)` (`i <= j`), mirroring the
    /// lower triangle so symmetry holds exactly as stored.
    pub fn from_upper(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(order > 0, "order must be positive");
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[i * order + j] = v;
                entries[j * order + i] = v;
            }
        }
        SymmetricMatrix { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_upper(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Validates symmetry of a row-major square slice and wraps it.
    pub fn from_rows(order: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), order * order);
        let m = SymmetricMatrix {
            order,
            entries: rows.to_vec(),
        };
        for i in 0..order {
            for j in (i + 1)..order {
                assert_eq!(m.get(i, j), m.get(j, i), "input not symmetric");
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Eigenvalues (descending) with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Descending order.
    pub eigenvalues: Vec<f64>,
    /// Column i (i.e. `eigenvectors[i]`) pairs with `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// True when the smallest eigenvalue signals numerical rank deficiency.
    pub fn is_rank_deficient(&self) -> bool {
        self.min() <= RANK_TOLERANCE * self.max().abs()
    }
}

fn off_diagonal_norm(a: &[f64], order: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..order {
        for j in 0..order {
            if i != j {
                sum += a[i * order + j] * a[i * order + j];
            }
        }
    }
    sum.sqrt()
}

/// Cross-product `X^T X` of a design, upper triangle computed and mirrored.
pub fn crossprod(x: &DesignMatrix) -> SymmetricMatrix {
    let k = x.k();
    SymmetricMatrix::from_upper(k, |i, j| {
        let a = &x.column(i).values;
        let b = &x.column(j).values;
        a.iter().zip(b).map(|(p, q)| p * q).sum()
    })
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Convergence: off-diagonal Frobenius norm below `1e-14 * ||S||_F`, with a
/// cap of 100 sweeps. Output ordering is deterministic: eigenvalues
/// descending, ties broken by the eigenvector's first component, and each
/// eigenvector is flipped so its largest-magnitude component is positive.
pub fn sym_eigen(s: &SymmetricMatrix) -> Result<EigenDecomposition, NumericsError> {
    let n = s.order;
    let mut a = s.entries.clone();
    // v stored row-major; column q of the accumulated rotation is the
    // eigenvector for diagonal entry q
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let scale = s.frobenius_norm();
    if scale == 0.0 {
        // zero matrix: eigenvalues all zero, identity eigenvectors
        let eigenvalues = vec![0.0; n];
        let eigenvectors = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        return Ok(EigenDecomposition {
            eigenvalues,
            eigenvectors,
        });
    }
    let threshold = JACOBI_OFF_TOLERANCE * scale;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;

                // rotate rows/columns p and q of A
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - sn * aiq;
                    a[i * n + q] = sn * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - sn * aqj;
                    a[q * n + j] = sn * apj + c * aqj;
                }
                // keep symmetry exact where rounding could drift
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                // accumulate rotations into V
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - sn * viq;
                    v[i * n + q] = sn * vip + c * viq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) >= threshold {
        return Err(NumericsError::NonConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|q| {
            let mut vec_q: Vec<f64> = (0..n).map(|i| v[i * n + q]).collect();
            // sign convention: largest-magnitude component positive
            let lead = vec_q
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
                .map(|(i, _)| i)
                .unwrap();
            if vec_q[lead] < 0.0 {
                for e in vec_q.iter_mut() {
                    *e = -*e;
                }
            }
            (a[q * n + q], vec_q)
        })
        .collect();
    pairs.sort_by(|x, y| {
        y.0.total_cmp(&x.0)
            .then_with(|| x.1[0].total_cmp(&y.1[0]))
    });

    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Inverse of a symmetric positive-definite matrix via its eigensystem.
///
/// Rejects inputs whose smallest eigenvalue falls at or below the rank
/// tolerance (exact or near-exact collinearity upstream).
pub fn invert_spd(s: &SymmetricMatrix) -> Result<SymmetricMatrix, NumericsError> {
    let eig = sym_eigen(s)?;
    let max = eig.max();
    if max <= 0.0 {
        return Err(NumericsError::NotPositiveDefinite {
            context: format!("largest eigenvalue {max:.3e} is not positive"),
        });
    }
    if eig.is_rank_deficient() {
        return Err(NumericsError::RankDeficient {
            context: format!(
                "smallest eigenvalue {:.3e} is within tolerance of zero (largest {:.3e})",
                eig.min(),
                max
            ),
        });
    }
    if eig.min() <= 0.0 {
        return Err(NumericsError::NotPositiveDefinite {
            context: format!("smallest eigenvalue {:.3e} is not positive", eig.min()),
        });
    }
    let n = s.order;
    let inv = SymmetricMatrix::from_upper(n, |i, j| {
        (0..n)
            .map(|q| eig.eigenvectors[q][i] * eig.eigenvectors[q][j] / eig.eigenvalues[q])
            .sum()
    });
    Ok(inv)
}

/// Determinant of a symmetric matrix as the product of its eigenvalues.
/// Returns (approximately) zero for singular input instead of failing.
pub fn det_spd(s: &SymmetricMatrix) -> Result<f64, NumericsError> {
    let eig = sym_eigen(s)?;
    Ok(eig.eigenvalues.iter().product())
}

/// Ordinary least squares fit.
#[derive(Debug, Clone)]
pub struct OlsFit {
    /// One coefficient per design column, in design order.
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `1 - SSR/SST`, SST about the mean when an intercept is present,
    /// clamped to `[0, 1]`.
    pub r_squared: f64,
}

impl OlsFit {
    pub fn residual_sum_of_squares(&self) -> f64 {
        self.residuals.iter().map(|r| r * r).sum()
    }
}

/// OLS of `y` on the design columns via the normal equations.
///
/// Rank deficiency is detected on the cross-product with the same threshold
/// as [`invert_spd`], so exact collinearity fails here in the same way it
/// fails in the measures.
pub fn ols(x: &DesignMatrix, y: &[f64]) -> Result<OlsFit, NumericsError> {
    let n = x.n();
    let k = x.k();
    assert_eq!(y.len(), n, "response length must match design rows");
    if n <= k {
        return Err(NumericsError::TooFewObservations { n, k });
    }
    let s = crossprod(x);
    let inv = invert_spd(&s).map_err(|e| match e {
        NumericsError::RankDeficient { .. } => NumericsError::RankDeficient {
            context: format!("design columns {:?} are collinear", x.names()),
        },
        other => other,
    })?;
    let xty: Vec<f64> = (0..k)
        .map(|j| {
            x.column(j)
                .values
                .iter()
                .zip(y)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    let coefficients = inv.mul_vec(&xty);
    let fitted: Vec<f64> = (0..n)
        .map(|i| {
            (0..k)
                .map(|j| coefficients[j] * x.column(j).values[i])
                .sum()
        })
        .collect();
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(yi, fi)| yi - fi).collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    let sst: f64 = if x.has_intercept() {
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - mean) * (v - mean)).sum()
    } else {
        y.iter().map(|v| v * v).sum()
    };
    let r_squared = if sst > 0.0 {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    } else {
        // SST == 0 means y is constant (or zero without intercept): the fit
        // is either perfect or meaningless; report accordingly
        if ssr <= f64::EPSILON { 1.0 } else { 0.0 }
    };
    Ok(OlsFit {
        coefficients,
        residuals,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Column, ColumnRole, DesignMatrix};

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

    #[test]
    fn crossprod_of_single_ones_column() {
        let x = design(vec![("intercept", ColumnRole::Intercept, vec![1.0; 17])]);
        let s = crossprod(&x);
        assert_eq!(s.order(), 1);
        assert_eq!(s.get(0, 0), 17.0);
    }

    #[test]
    fn eigen_identity() {
        let eig = sym_eigen(&SymmetricMatrix::identity(3)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigen_two_by_two_with_sqrt_p() {
        // [[1, sqrt(p)], [sqrt(p), 1]] has eigenvalues 1 +- sqrt(p)
        let p: f64 = 7.0 / 17.0;
        let r = p.sqrt();
        let s = SymmetricMatrix::from_rows(2, &[1.0, r, r, 1.0]);
        let eig = sym_eigen(&s).unwrap();
        assert!((eig.eigenvalues[0] - (1.0 + r)).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - (1.0 - r)).abs() < 1e-14);
        assert!((eig.eigenvalues[0] - 1.64169).abs() < 1e-5);
        assert!((eig.eigenvalues[1] - 0.35831).abs() < 1e-5);
    }

    #[test]
    fn eigen_pairs_satisfy_definition() {
        let s = SymmetricMatrix::from_rows(3, &[4.0, 1.0, -2.0, 1.0, 3.0, 0.5, -2.0, 0.5, 5.0]);
        let eig = sym_eigen(&s).unwrap();
        let norm = s.frobenius_norm();
        for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            let sv = s.mul_vec(v);
            let resid: f64 = sv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - lambda * b) * (a - lambda * b))
                .sum::<f64>()
                .sqrt();
            assert!(resid <= 1e-9 * norm, "residual {resid}");
        }
        // orthonormality
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = eig.eigenvectors[i]
                    .iter()
                    .zip(&eig.eigenvectors[j])
                    .map(|(a, b)| a * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-9);
            }
        }
        // trace and determinant consistency
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - s.trace()).abs() < 1e-9 * s.trace().abs().max(1.0));
    }

    #[test]
    fn invert_identity_and_diagonal() {
        let inv = invert_spd(&SymmetricMatrix::identity(2)).unwrap();
        assert_eq!(inv.get(0, 0), 1.0);
        assert_eq!(inv.get(0, 1), 0.0);

        let d = SymmetricMatrix::from_rows(2, &[2.0, 0.0, 0.0, 4.0]);
        let inv = invert_spd(&d).unwrap();
        assert!((inv.get(0, 0) - 0.5).abs() < 1e-14);
        assert!((inv.get(1, 1) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn invert_two_by_two_closed_form() {
        let a = 0.6_f64;
        let s = SymmetricMatrix::from_rows(2, &[1.0, a, a, 1.0]);
        let inv = invert_spd(&s).unwrap();
        let scale = 1.0 / (1.0 - a * a);
        assert!((inv.get(0, 0) - scale).abs() < 1e-12);
        assert!((inv.get(0, 1) + a * scale).abs() < 1e-12);
        // product with the original is the identity
        for i in 0..2 {
            for j in 0..2 {
                let prod: f64 = (0..2).map(|q| s.get(i, q) * inv.get(q, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod - expect).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn invert_rejects_singular() {
        let s = SymmetricMatrix::from_rows(2, &[1.0, 1.0, 1.0, 1.0]);
        let err = invert_spd(&s).unwrap_err();
        assert!(matches!(err, NumericsError::RankDeficient { .. }), "{err}");
    }

    #[test]
    fn determinant_examples() {
        assert!((det_spd(&SymmetricMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-12);
        let rank1 = SymmetricMatrix::from_rows(2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(det_spd(&rank1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ols_exact_fit_gives_r2_one() {
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 5]),
            ("x", ColumnRole::Quantitative, vec![1.0, 2.0, 3.0, 4.0, 5.0]),
        ]);
        let y = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let fit = ols(&x, &y).unwrap();
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(fit.residual_sum_of_squares() < 1e-18);
    }

    #[test]
    fn ols_orthogonal_response_gives_r2_zero() {
        // centered regressor, y orthogonal to it (and mean-free beyond the
        // intercept's reach only through it)
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 4]),
            ("x", ColumnRole::Quantitative, vec![-1.5, -0.5, 0.5, 1.5]),
        ]);
        let y = vec![1.0, -1.0, -1.0, 1.0]; // orthogonal to both columns' centered parts
        let fit = ols(&x, &y).unwrap();
        assert!(fit.r_squared.abs() < 1e-12, "r2 = {}", fit.r_squared);
    }

    #[test]
    fn ols_residuals_orthogonal_to_design() {
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 6]),
            (
                "x",
                ColumnRole::Quantitative,
                vec![1.0, 2.5, 3.0, 4.5, 5.0, 7.0],
            ),
        ]);
        let y = vec![2.0, 2.9, 4.2, 5.1, 5.8, 8.5];
        let fit = ols(&x, &y).unwrap();
        let ynorm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for j in 0..x.k() {
            let dot: f64 = x
                .column(j)
                .values
                .iter()
                .zip(&fit.residuals)
                .map(|(a, b)| a * b)
                .sum();
            let colnorm: f64 = x.column(j).values.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(dot.abs() <= 1e-8 * ynorm * colnorm, "dot = {dot}");
        }
    }

    #[test]
    fn ols_needs_more_rows_than_columns() {
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0, 1.0]),
            ("x", ColumnRole::Quantitative, vec![1.0, 2.0]),
        ]);
        let err = ols(&x, &[1.0, 2.0]).unwrap_err();
        assert!(matches!(err, NumericsError::TooFewObservations { .. }));
    }

    #[test]
    fn ols_rejects_collinear_design() {
        let x = design(vec![
            ("intercept", ColumnRole::Intercept, vec![1.0; 4]),
            ("a", ColumnRole::Quantitative, vec![1.0, 2.0, 3.0, 4.0]),
            ("b", ColumnRole::Quantitative, vec![2.0, 4.0, 6.0, 8.0]),
        ]);
        let err = ols(&x, &[1.0, 2.0, 2.0, 4.0]).unwrap_err();
        assert!(matches!(err, NumericsError::RankDeficient { .. }), "{err}");
    }
}
