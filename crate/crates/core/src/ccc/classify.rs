use alloc::format;
use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{equal_up_to_phase, gates, is_unitary, ComplexMatrix};
use crate::stabilizer::{CliffordCircuit, CliffordGate, Pauli, PauliString};

use super::angle::ExactAngle;
use super::CccError;

/// `U = e^{iα} R_z(φ) R_x(θ) R_z(λ)` in canonical form: every angle in
/// `[0, 2π)`, and `λ = 0` whenever `θ ∈ πZ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryDecomposition {
    pub alpha: ExactAngle,
    pub phi: ExactAngle,
    pub theta: ExactAngle,
    pub lambda: ExactAngle,
}

impl UnitaryDecomposition {
    /// Canonicalises arbitrary angles without changing the operator.
    pub fn from_angles(alpha: ExactAngle, phi: ExactAngle, theta: ExactAngle, lambda: ExactAngle) -> Self {
        let pi = ExactAngle::rational_pi(1, 1);
        let mut alpha = alpha;
        let mut flip = |a: ExactAngle| {
            let (w, odd) = a.wrap_two_pi();
            if odd {
                alpha = alpha.add(&pi);
            }
            w
        };
        let theta = flip(theta);
        // R_x(π) R_z(λ) = R_z(-λ) R_x(π), so λ folds into φ.
        let (phi, lambda) = if theta.in_two_pi_z() {
            (phi.add(&lambda), ExactAngle::ZERO)
        } else if theta.in_pi_z() {
            (phi.sub(&lambda), ExactAngle::ZERO)
        } else {
            (phi, lambda)
        };
        let phi = flip(phi);
        let lambda = flip(lambda);
        Self { alpha: alpha.wrap_two_pi().0, phi, theta, lambda }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        gates::euler_zxz(self.alpha.radians(), self.phi.radians(), self.theta.radians(), self.lambda.radians())
    }
}

/// Euler decomposition of a 2×2 unitary, with rational-π detection on
/// every angle.
pub fn decompose_unitary(u: &ComplexMatrix) -> Result<UnitaryDecomposition, CccError> {
    if u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-10) {
        return Err(CccError::NotUnitary);
    }
    let det = u.det()?;
    // Reduce to SU(2): v = [[a, b], [·, ·]] with
    // a = cos(θ/2) e^{-i(φ+λ)/2}, b = -i sin(θ/2) e^{-i(φ-λ)/2}.
    let v = u.scale(crate::linalg::cis(-det.arg() / 2.0));
    let (a, b) = (v[(0, 0)], v[(0, 1)]);
    let theta = ExactAngle::detect(2.0 * b.norm().atan2(a.norm()));
    let pi = core::f64::consts::PI;
    let (phi, lambda) = if theta.in_two_pi_z() {
        (-2.0 * a.arg(), 0.0)
    } else if theta.in_pi_z() {
        (-2.0 * b.arg() - pi, 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = -2.0 * b.arg() - pi;
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    let d = UnitaryDecomposition::from_angles(
        ExactAngle::ZERO,
        ExactAngle::detect(phi.rem_euclid(2.0 * pi)),
        theta,
        ExactAngle::detect(lambda.rem_euclid(2.0 * pi)),
    );
    // The global phase is whatever remains.
    let m = d.matrix();
    let k = (0..4).max_by(|&i, &j| m.entries()[i].norm().total_cmp(&m.entries()[j].norm())).expect("four entries");
    let alpha = (u.entries()[k] / m.entries()[k]).arg().rem_euclid(2.0 * pi);
    Ok(UnitaryDecomposition { alpha: ExactAngle::detect(alpha).wrap_two_pi().0, ..d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    #[serde(rename = "iv")]
    Iv,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "i",
            CaseTag::Ii => "ii",
            CaseTag::Iii => "iii",
            CaseTag::Iv => "iv",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexityClass {
    #[serde(rename = "PWEAK")]
    Pweak,
    #[serde(rename = "PH_SUPREME")]
    PhSupreme,
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityClass::Pweak => "PWEAK",
            ComplexityClass::PhSupreme => "PH_SUPREME",
        })
    }
}

/// `U ∼ Γ·R_z(λ)` with `Γ` a single-qubit Clifford word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalForm {
    pub gamma: CliffordCircuit,
    /// Readable form of `Γ` as a matrix product, e.g. `S^1 H S^3 H`.
    pub label: String,
    pub lambda: ExactAngle,
}

impl CanonicalForm {
    pub fn matrix(&self) -> ComplexMatrix {
        let g = self.gamma.to_matrix().expect("one qubit");
        g.dot(&gates::rz(self.lambda.radians()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    pub case: CaseTag,
    pub class: ComplexityClass,
    pub canonical_form: Option<CanonicalForm>,
}

/// Single-qubit circuit for `S^j H S^m H` (matrix order).
fn case_two_word(j: i64, m: i64) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(1);
    c.push(CliffordGate::H(0)).expect("in range");
    for _ in 0..m {
        c.push(CliffordGate::S(0)).expect("in range");
    }
    c.push(CliffordGate::H(0)).expect("in range");
    for _ in 0..j {
        c.push(CliffordGate::S(0)).expect("in range");
    }
    c
}

/// Decides the weak-simulation class of `U`-conjugated Clifford circuits.
/// Only `φ` and `θ` matter; `α` and `λ` are ignored.
pub fn classify(d: &UnitaryDecomposition) -> ClassificationVerdict {
    let (phi, theta, lambda) = (d.phi, d.theta, d.lambda);
    if theta.in_pi_z() {
        let form = if theta.in_two_pi_z() {
            CanonicalForm {
                gamma: CliffordCircuit::new(1),
                label: "I".into(),
                lambda: phi.add(&lambda).wrap_two_pi().0,
            }
        } else {
            let gamma = CliffordCircuit::new(1).with(CliffordGate::X(0)).expect("in range");
            CanonicalForm { gamma, label: "X".into(), lambda: lambda.sub(&phi).wrap_two_pi().0 }
        };
        return ClassificationVerdict { case: CaseTag::I, class: ComplexityClass::Pweak, canonical_form: Some(form) };
    }
    if theta.in_half_pi_z_odd() {
        if let Some(j) = phi.half_pi_multiple() {
            let m = theta.half_pi_multiple().expect("odd multiple of π/2");
            let (j, m) = (j.rem_euclid(4), m.rem_euclid(4));
            let form = CanonicalForm {
                gamma: case_two_word(j, m),
                label: format!("S^{j} H S^{m} H"),
                lambda: lambda.wrap_two_pi().0,
            };
            return ClassificationVerdict {
                case: CaseTag::Ii,
                class: ComplexityClass::Pweak,
                canonical_form: Some(form),
            };
        }
        return ClassificationVerdict { case: CaseTag::Iii, class: ComplexityClass::PhSupreme, canonical_form: None };
    }
    ClassificationVerdict { case: CaseTag::Iv, class: ComplexityClass::PhSupreme, canonical_form: None }
}

fn is_signed_pauli(m: &ComplexMatrix, tol: f64) -> bool {
    [Pauli::X, Pauli::Y, Pauli::Z]
        .into_iter()
        .any(|p| equal_up_to_phase(m, &PauliString::single(1, 0, p).to_matrix(), tol))
}

/// `true` iff `U X U†` and `U Z U†` are both `±` a Pauli (tolerance 1e-9).
pub fn is_clifford_single_qubit(u: &ComplexMatrix) -> bool {
    if u.rows() != 2 || u.cols() != 2 {
        return false;
    }
    let ud = u.adjoint();
    is_signed_pauli(&u.dot(&gates::x()).dot(&ud), 1e-9) && is_signed_pauli(&u.dot(&gates::z()).dot(&ud), 1e-9)
}
