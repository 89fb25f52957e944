//! ARD squared-exponential covariance and kernel matrix assembly.
//!
//! k(x, x') = a₀² exp(−½ (x−x')ᵀ diag(η) (x−x'))
//!
//! Hyperparameters are carried in log space (ln σ, ln a₀, ln η) so the
//! analytic gradient formulas transcribe directly; values are exponentiated
//! on evaluation. All functions here are pure and safe to call concurrently.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kernel and noise hyperparameters in log space, plus the inducing inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    /// ln σ — observation noise std; β = σ⁻².
    pub log_sigma: f64,
    /// ln a₀ — signal std.
    pub log_a0: f64,
    /// ln η — per-dimension inverse squared lengthscales, length d.
    pub log_eta: DVector<f64>,
    /// m×d inducing inputs, one row per inducing point.
    pub z: DMatrix<f64>,
}

impl HyperParams {
    pub fn new(
        log_sigma: f64,
        log_a0: f64,
        log_eta: DVector<f64>,
        z: DMatrix<f64>,
    ) -> Result<Self> {
        let hp = Self {
            log_sigma,
            log_a0,
            log_eta,
            z,
        };
        hp.validate()?;
        Ok(hp)
    }

    /// Shape and finiteness checks. Duplicate inducing rows are checked at
    /// basis build time, not here.
    pub fn validate(&self) -> Result<()> {
        if self.z.nrows() == 0 {
            return Err(Error::InvalidParameter {
                name: "z",
                reason: "need at least one inducing point".into(),
            });
        }
        if self.z.ncols() == 0 {
            return Err(Error::InvalidParameter {
                name: "z",
                reason: "input dimension must be at least 1".into(),
            });
        }
        if self.log_eta.len() != self.z.ncols() {
            return Err(Error::DimensionMismatch {
                what: "log_eta",
                expected: self.z.ncols(),
                got: self.log_eta.len(),
            });
        }
        if !self.log_sigma.is_finite() || !self.log_a0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "log_sigma/log_a0",
                reason: "must be finite".into(),
            });
        }
        if self.log_eta.iter().any(|v| !v.is_finite()) || self.z.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "log_eta/z",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }

    /// Noise precision β = exp(−2 ln σ).
    pub fn beta(&self) -> f64 {
        (-2.0 * self.log_sigma).exp()
    }

    /// Signal variance a₀² = exp(2 ln a₀).
    pub fn a0_sq(&self) -> f64 {
        (2.0 * self.log_a0).exp()
    }

    /// Inverse squared lengthscales η = exp(ln η).
    pub fn eta(&self) -> DVector<f64> {
        self.log_eta.map(f64::exp)
    }

    pub fn num_inducing(&self) -> usize {
        self.z.nrows()
    }

    pub fn input_dim(&self) -> usize {
        self.z.ncols()
    }
}

#[inline]
fn kernel_between_rows(
    a: &DMatrix<f64>,
    i: usize,
    b: &DMatrix<f64>,
    j: usize,
    a0_sq: f64,
    eta: &DVector<f64>,
) -> f64 {
    let mut q = 0.0;
    for k in 0..eta.len() {
        let d = a[(i, k)] - b[(j, k)];
        q += eta[k] * d * d;
    }
    a0_sq * (-0.5 * q).exp()
}

/// Covariance between two input vectors.
pub fn ard_kernel(x: &DVector<f64>, x2: &DVector<f64>, hp: &HyperParams) -> Result<f64> {
    let d = hp.input_dim();
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            what: "ard_kernel x",
            expected: d,
            got: x.len(),
        });
    }
    if x2.len() != d {
        return Err(Error::DimensionMismatch {
            what: "ard_kernel x2",
            expected: d,
            got: x2.len(),
        });
    }
    let eta = hp.eta();
    let mut q = 0.0;
    for k in 0..d {
        let diff = x[k] - x2[k];
        q += eta[k] * diff * diff;
    }
    Ok(hp.a0_sq() * (-0.5 * q).exp())
}

/// p×q matrix with entry (i, j) = k(aᵢ, bⱼ).
pub fn kernel_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>, hp: &HyperParams) -> Result<DMatrix<f64>> {
    let d = hp.input_dim();
    if a.ncols() != d {
        return Err(Error::DimensionMismatch {
            what: "kernel_matrix A",
            expected: d,
            got: a.ncols(),
        });
    }
    if b.ncols() != d {
        return Err(Error::DimensionMismatch {
            what: "kernel_matrix B",
            expected: d,
            got: b.ncols(),
        });
    }
    let a0_sq = hp.a0_sq();
    let eta = hp.eta();
    Ok(DMatrix::from_fn(a.nrows(), b.nrows(), |i, j| {
        kernel_between_rows(a, i, b, j, a0_sq, &eta)
    }))
}

/// Symmetric Gram matrix K(A, A); the upper triangle is computed once and
/// mirrored so the result equals its transpose exactly.
pub fn kernel_gram(a: &DMatrix<f64>, hp: &HyperParams) -> Result<DMatrix<f64>> {
    let d = hp.input_dim();
    if a.ncols() != d {
        return Err(Error::DimensionMismatch {
            what: "kernel_gram A",
            expected: d,
            got: a.ncols(),
        });
    }
    let a0_sq = hp.a0_sq();
    let eta = hp.eta();
    let n = a.nrows();
    let mut k = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = a0_sq;
        for j in i + 1..n {
            let v = kernel_between_rows(a, i, a, j, a0_sq, &eta);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}

/// Diagonal [k(aᵢ, aᵢ)]ᵢ = a₀²·1, without materializing the full Gram matrix.
pub fn kernel_diag(a: &DMatrix<f64>, hp: &HyperParams) -> Result<DVector<f64>> {
    if a.ncols() != hp.input_dim() {
        return Err(Error::DimensionMismatch {
            what: "kernel_diag A",
            expected: hp.input_dim(),
            got: a.ncols(),
        });
    }
    Ok(DVector::from_element(a.nrows(), hp.a0_sq()))
}

/// k_m(x): covariances of a single input against every inducing row.
pub(crate) fn kernel_vector(
    x: &DVector<f64>,
    hp: &HyperParams,
    a0_sq: f64,
    eta: &DVector<f64>,
    out: &mut DVector<f64>,
) {
    let m = hp.z.nrows();
    debug_assert_eq!(out.len(), m);
    for j in 0..m {
        let mut q = 0.0;
        for k in 0..eta.len() {
            let d = x[k] - hp.z[(j, k)];
            q += eta[k] * d * d;
        }
        out[j] = a0_sq * (-0.5 * q).exp();
    }
}

/// k_m(x) for the i-th row of `a`: covariances against every inducing row.
pub(crate) fn kernel_vector_for_row(
    a: &DMatrix<f64>,
    i: usize,
    hp: &HyperParams,
    a0_sq: f64,
    eta: &DVector<f64>,
    out: &mut DVector<f64>,
) {
    let m = hp.z.nrows();
    debug_assert_eq!(out.len(), m);
    for j in 0..m {
        out[j] = kernel_between_rows(a, i, &hp.z, j, a0_sq, eta);
    }
}
