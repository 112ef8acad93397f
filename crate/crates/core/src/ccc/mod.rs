//! The `U`-CCC model: Euler decomposition, exact classification, the
//! easy-case samplers, dense reference probabilities and single-qubit
//! marginals.

mod angle;
mod classify;
mod simulate;

pub use angle::{reconstruct_rational_pi, ExactAngle, ParseAngleError, RECONSTRUCTION_MAX_DEN, RECONSTRUCTION_TOL};
pub use classify::{
    classify, decompose_unitary, is_clifford_single_qubit, CanonicalForm, CaseTag, ClassificationVerdict,
    ComplexityClass, UnitaryDecomposition,
};
pub use simulate::{
    dense_distribution, marginal_single_qubit, outcome_probability, simulate_easy_weak, tv_distance, CccInstance,
    EasyReduction, MarginalSimulator, OutcomeDistribution,
};

use crate::linalg::LinalgError;
use crate::stabilizer::StabilizerError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CccError {
    #[error("matrix is not a 2x2 unitary")]
    NotUnitary,
    #[error("U is not in the classically easy class")]
    NotEasy,
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("size mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}
