//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
///
/// Hand-rolled so a failure can name the offending pivot.
pub fn cholesky_lower(a: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::Factorization {
                what,
                detail: format!("pivot {j} is {d:.3e} (must be positive)"),
            });
        }
        let dj = d.sqrt();
        l[(j, j)] = dj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok(l)
}

/// Solve L X = B in place for lower-triangular L.
pub fn solve_lower_inplace(l: &DMatrix<f64>, b: &mut DMatrix<f64>) {
    let n = l.nrows();
    for col in 0..b.ncols() {
        for i in 0..n {
            let mut s = b[(i, col)];
            for k in 0..i {
                s -= l[(i, k)] * b[(k, col)];
            }
            b[(i, col)] = s / l[(i, i)];
        }
    }
}

/// Solve Lᵀ X = B in place for lower-triangular L.
pub fn solve_lower_transpose_inplace(l: &DMatrix<f64>, b: &mut DMatrix<f64>) {
    let n = l.nrows();
    for col in 0..b.ncols() {
        for i in (0..n).rev() {
            let mut s = b[(i, col)];
            for k in i + 1..n {
                s -= l[(k, i)] * b[(k, col)];
            }
            b[(i, col)] = s / l[(i, i)];
        }
    }
}

/// Inverse of a symmetric positive-definite matrix via its Cholesky factor,
/// symmetrized to remove round-off skew.
pub fn spd_inverse(a: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let g = cholesky_lower(a, what)?;
    let mut inv = DMatrix::<f64>::identity(n, n);
    solve_lower_inplace(&g, &mut inv);
    solve_lower_transpose_inplace(&g, &mut inv);
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (inv[(i, j)] + inv[(j, i)]);
            inv[(i, j)] = v;
            inv[(j, i)] = v;
        }
    }
    Ok(inv)
}

/// Solve (G Gᵀ) x = b given the lower Cholesky factor G.
pub fn chol_solve_vec(g: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let mut x = DMatrix::from_column_slice(b.len(), 1, b.as_slice());
    solve_lower_inplace(g, &mut x);
    solve_lower_transpose_inplace(g, &mut x);
    DVector::from_column_slice(x.as_slice())
}

/// Keep the upper triangle (including the diagonal), zero the rest.
pub fn triu(a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = a.clone();
    for j in 0..out.ncols() {
        for i in j + 1..out.nrows() {
            out[(i, j)] = 0.0;
        }
    }
    out
}

/// Largest eigenvalue of a symmetric matrix.
pub fn sym_max_eigenvalue(a: &DMatrix<f64>) -> f64 {
    let eig = a.clone().symmetric_eigen();
    eig.eigenvalues.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_roundtrip() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 2.0, 0.6, 2.0, 5.0, 1.0, 0.6, 1.0, 3.0]);
        let l = cholesky_lower(&a, "test").unwrap();
        let back = &l * l.transpose();
        assert!((&back - &a).abs().max() < 1e-12);
    }

    #[test]
    fn cholesky_reports_pivot() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let err = cholesky_lower(&a, "test").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("pivot 1"), "{msg}");
    }

    #[test]
    fn spd_inverse_identity() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let inv = spd_inverse(&a, "test").unwrap();
        let prod = &a * &inv;
        assert!((prod - DMatrix::<f64>::identity(2, 2)).abs().max() < 1e-12);
    }
}
