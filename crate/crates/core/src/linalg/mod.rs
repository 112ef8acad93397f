//! Small dense complex linear algebra: gate matrices, statevectors, and
//! phase-insensitive comparisons.

pub mod gates;
mod matrix;
mod state;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;

pub use matrix::{c64, cis, ComplexMatrix};
pub use state::{Statevector, DEFAULT_DENSE_CAP};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("bad shape {rows}x{cols} for {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("gate of dimension {dim} does not act on {targets} qubit(s)")]
    GateArity { dim: usize, targets: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} targeted twice")]
    RepeatedTarget(usize),
    #[error("{n} qubits exceeds the dense simulation cap of {cap}")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("normalized action does not exist: determinant is zero")]
    Singular,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// `A / (det A)^{1/2^l}` with the principal root, so the result has unit
/// determinant. It is defined only up to a `2^l`-th root of unity.
pub fn normalized_action(a: &ComplexMatrix, l: u32) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != 1 << l {
        return Err(LinalgError::GateArity { dim: a.rows(), targets: l as usize });
    }
    let det = a.det()?;
    if det.norm() < 1e-12 {
        return Err(LinalgError::Singular);
    }
    let root = det.powf(1.0 / (1u64 << l) as f64);
    Ok(a.scale(root.inv()))
}

/// Finds `α` with `a ≈ α b`, taking `α` from the largest entry of `b`.
fn proportionality_factor(a: &ComplexMatrix, b: &ComplexMatrix) -> Option<Complex64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let (idx, pivot) = b.entries().iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    if pivot.norm() == 0.0 {
        return None;
    }
    Some(a.entries()[idx] / pivot)
}

/// `a ∝ b`: equal up to a nonzero complex scalar, entrywise within `tol`
/// relative to the larger of the two matrices.
pub fn proportional_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    proportional_with(a, b, tol, false)
}

/// `a ∼ b`: equal up to a unit-modulus global phase.
pub fn equal_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    proportional_with(a, b, tol, true)
}

fn proportional_with(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64, unit: bool) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    let (a_zero, b_zero) = (a.max_abs() <= tol, b.max_abs() <= tol);
    if a_zero || b_zero {
        return a_zero && b_zero && !unit;
    }
    let Some(alpha) = proportionality_factor(a, b) else {
        return false;
    };
    if unit && (alpha.norm() - 1.0).abs() > tol {
        return false;
    }
    a.entries().iter().zip(b.entries()).all(|(&x, &y)| (x - alpha * y).norm() <= tol * scale)
}

/// Returns `γ` when `a†a = γ I` with `γ > tol`.
pub fn unitary_scale(a: &ComplexMatrix, tol: f64) -> Option<f64> {
    if !a.is_square() {
        return None;
    }
    let gram = a.adjoint().dot(a);
    let gamma = gram.trace().re / a.rows() as f64;
    if gamma <= tol {
        return None;
    }
    let id = ComplexMatrix::identity(a.rows());
    let dev = gram.scale(Complex64::new(1.0 / gamma, 0.0)).max_abs_diff(&id).ok()?;
    (dev <= tol).then_some(gamma)
}

pub fn is_unitary_up_to_scale(a: &ComplexMatrix, tol: f64) -> bool {
    unitary_scale(a, tol).is_some()
}

pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_square() && {
        let gram = a.adjoint().dot(a);
        gram.max_abs_diff(&ComplexMatrix::identity(a.rows())).is_ok_and(|d| d <= tol)
    }
}

/// `min_γ ‖a − e^{iγ} b‖` in operator norm, for 2×2 unitaries.
///
/// With `w = a†b` having eigenphases `ω₁, ω₂`, the norm is
/// `max_j 2|sin((γ+ω_j)/2)|`; the minimum puts `γ` midway between the two
/// phases, giving `2 sin(Δ/4)` for the angular gap `Δ ∈ [0, π]`.
pub fn phase_invariant_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, LinalgError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(LinalgError::DimensionMismatch { left: (a.rows(), a.cols()), right: (b.rows(), b.cols()) });
    }
    if a.rows() != 2 || a.cols() != 2 {
        return Err(LinalgError::Unsupported("phase-invariant distance is implemented for 2x2"));
    }
    if !is_unitary(a, 1e-8) || !is_unitary(b, 1e-8) {
        return Err(LinalgError::NotUnitary);
    }
    let w = a.adjoint().dot(b);
    let half_tr = w.trace() / 2.0;
    let disc = (half_tr * half_tr - w.det()?).sqrt();
    let (l1, l2) = (half_tr + disc, half_tr - disc);
    let gap = (l1.arg() - l2.arg()).abs();
    let gap = if gap > core::f64::consts::PI { 2.0 * core::f64::consts::PI - gap } else { gap };
    Ok(2.0 * (gap / 4.0).sin())
}
