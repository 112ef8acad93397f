//! Postselection gadgets: construction, dense contraction, Clifford tests,
//! brute-force search and a bounded word-search compiler.

mod compile;
pub(crate) mod search;

use alloc::vec::Vec;

use serde::Serialize;

use crate::bits::BitString;
use crate::ccc::ExactAngle;
use crate::linalg::{gates, is_unitary_up_to_scale, normalized_action, unitary_scale, ComplexMatrix, LinalgError};
use crate::stabilizer::{CliffordCircuit, CliffordGate, Pauli, PauliString, StabilizerError};
use crate::TOL_STRUCTURAL;

pub use compile::{compile_word, CompiledWord, DEFAULT_BEAM_WIDTH, MAX_WORD_LENGTH};
pub use search::{
    merge_hits, search_assignment, search_gadgets, search_gadgets_sampled, search_gadgets_with, search_pool, ActionKey,
    Assignment, CliffordPool, SearchHit, SearchReport, DEFAULT_SAMPLED_BUDGET, DEFAULT_SAMPLED_WORD_LENGTH,
};

/// Largest gadget width evaluated densely.
pub const MAX_GADGET_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GadgetError {
    #[error("gadget needs k > l >= 1 (got k={k}, l={l})")]
    BadWidths { k: usize, l: usize },
    #[error("gadget width {k} exceeds the cap of {max}")]
    TooWide { k: usize, max: usize },
    #[error("expected {expected} {what}, got {got}")]
    WrongCount { what: &'static str, expected: usize, got: usize },
    #[error("postselected wire {0} is out of range or repeated")]
    BadWire(usize),
    #[error("Clifford part acts on {got} qubits, gadget has {k}")]
    CircuitWidth { k: usize, got: usize },
    #[error("U must be a 2x2 unitary")]
    NotUnitary,
    #[error("gadget search supports k = 2 or 3, got {0}")]
    SearchWidth(usize),
    #[error("no generators given")]
    NoGenerators,
    #[error("word length {0} exceeds the maximum of 14")]
    WordTooLong(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// A `k`-to-`l` postselection gadget.
///
/// Wires `0..l` are the system, wires `l..k` are ancillas prepared in
/// `|a>` and rotated by `U`. After the Clifford `gamma`, the wires in
/// `postselect` get `U†` and are projected onto `<b|`. The remaining wires,
/// in ascending order, carry the output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gadget {
    pub k: usize,
    pub l: usize,
    #[serde(skip)]
    pub u: ComplexMatrix,
    pub ancilla_bits: BitString,
    pub gamma: CliffordCircuit,
    pub postselect: Vec<usize>,
    pub postselect_bits: BitString,
}

impl Gadget {
    pub fn validate(&self) -> Result<(), GadgetError> {
        let (k, l) = (self.k, self.l);
        if l == 0 || k <= l {
            return Err(GadgetError::BadWidths { k, l });
        }
        if k > MAX_GADGET_QUBITS {
            return Err(GadgetError::TooWide { k, max: MAX_GADGET_QUBITS });
        }
        let m = k - l;
        for (what, got) in [
            ("ancilla bits", self.ancilla_bits.len()),
            ("postselected wires", self.postselect.len()),
            ("postselection bits", self.postselect_bits.len()),
        ] {
            if got != m {
                return Err(GadgetError::WrongCount { what, expected: m, got });
            }
        }
        for (i, &w) in self.postselect.iter().enumerate() {
            if w >= k || self.postselect[..i].contains(&w) {
                return Err(GadgetError::BadWire(w));
            }
        }
        if self.gamma.num_qubits() != k {
            return Err(GadgetError::CircuitWidth { k, got: self.gamma.num_qubits() });
        }
        if self.u.rows() != 2 || !crate::linalg::is_unitary(&self.u, 1e-10) {
            return Err(GadgetError::NotUnitary);
        }
        Ok(())
    }

    /// `true` when a system wire is among the postselected ones.
    pub fn postselects_system_wire(&self) -> bool {
        self.postselect.iter().any(|&w| w < self.l)
    }
}

/// `I⊗…⊗g⊗…⊗I` with `g` on `wire` (wire 0 most significant).
fn embed(g: &ComplexMatrix, wire: usize, k: usize) -> ComplexMatrix {
    let id = gates::identity();
    let mut m = ComplexMatrix::identity(1);
    for w in 0..k {
        m = m.kron(if w == wire { g } else { &id });
    }
    m
}

/// `<b|_S (∏ U†_S) Γ (∏ U_T) |a>_T` from the dense Clifford `gamma`.
pub(crate) fn contract(
    gamma: &ComplexMatrix,
    u: &ComplexMatrix,
    l: usize,
    k: usize,
    ancilla: &[bool],
    post: &[usize],
    bits: &[bool],
) -> ComplexMatrix {
    let ud = u.adjoint();
    let mut m = gamma.clone();
    for w in l..k {
        m = m.dot(&embed(u, w, k));
    }
    for &w in post {
        m = embed(&ud, w, k).dot(&m);
    }
    let bit = |idx: usize, w: usize| (idx >> (k - 1 - w)) & 1 == 1;
    let outputs: Vec<usize> = (0..k).filter(|w| !post.contains(w)).collect();
    let dim = 1usize << l;
    let mut a = ComplexMatrix::zeros(dim, dim);
    for row in 0..1usize << k {
        if post.iter().zip(bits).any(|(&w, &b)| bit(row, w) != b) {
            continue;
        }
        let out = outputs.iter().fold(0usize, |acc, &w| (acc << 1) | bit(row, w) as usize);
        for x in 0..dim {
            let col = (0..k).fold(0usize, |acc, w| {
                let v = if w < l { (x >> (l - 1 - w)) & 1 == 1 } else { ancilla[w - l] };
                (acc << 1) | v as usize
            });
            a[(out, x)] += m[(row, col)];
        }
    }
    a
}

/// Unitarity and Clifford membership of a gadget action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ActionClass {
    Clifford,
    UnitaryNonClifford,
    NonUnitary,
}

/// The linear map a gadget performs, with its structural flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetAction {
    pub matrix: ComplexMatrix,
    /// `γ` with `A†A = γI`, when the action is unitary up to scale.
    pub gamma: Option<f64>,
    pub is_unitary: bool,
    pub is_clifford: bool,
}

impl GadgetAction {
    pub fn from_matrix(matrix: ComplexMatrix) -> Self {
        let class = pauli_conjugation_test(&matrix);
        let gamma = unitary_scale(&matrix, TOL_STRUCTURAL).filter(|&g| g > TOL_STRUCTURAL);
        Self {
            gamma,
            is_unitary: class != ActionClass::NonUnitary,
            is_clifford: class == ActionClass::Clifford,
            matrix,
        }
    }

    pub fn class(&self) -> ActionClass {
        match (self.is_unitary, self.is_clifford) {
            (_, true) => ActionClass::Clifford,
            (true, false) => ActionClass::UnitaryNonClifford,
            _ => ActionClass::NonUnitary,
        }
    }

    pub fn normalized(&self) -> Result<ComplexMatrix, LinalgError> {
        let l = self.matrix.rows().trailing_zeros();
        normalized_action(&self.matrix, l)
    }
}

/// Contracts the gadget densely.
pub fn gadget_action(g: &Gadget) -> Result<GadgetAction, GadgetError> {
    g.validate()?;
    let gamma = g.gamma.to_matrix()?;
    let m = contract(&gamma, &g.u, g.l, g.k, g.ancilla_bits.as_slice(), &g.postselect, g.postselect_bits.as_slice());
    Ok(GadgetAction::from_matrix(m))
}

/// `true` when `m` is a nonzero multiple of a Pauli string.
fn proportional_to_pauli(m: &ComplexMatrix, l: usize, tol: f64) -> bool {
    let scale = m.max_abs();
    if scale <= tol {
        return false;
    }
    let m = m.scale(crate::linalg::c64(1.0 / scale, 0.0));
    let dim = 1usize << l;
    // Only one Pauli string can overlap a multiple of a Pauli string.
    for code in 0..4usize.pow(l as u32) {
        let paulis: Vec<Pauli> =
            (0..l).map(|q| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][(code >> (2 * q)) & 3]).collect();
        let p = PauliString::from_paulis(&paulis).to_matrix();
        let c = p.adjoint().dot(&m).trace() / dim as f64;
        if c.norm() > 0.5 {
            let residual = m.sub(&p.scale(c)).expect("same shape").max_abs();
            return residual <= tol;
        }
    }
    false
}

/// Classifies an action: Clifford iff unitary up to scale and the
/// normalized action maps every `X_i` and `Z_i` to a multiple of a Pauli
/// string (tolerance 1e-9).
pub fn pauli_conjugation_test(a: &ComplexMatrix) -> ActionClass {
    if !a.is_square() || !a.rows().is_power_of_two() || a.rows() < 2 {
        return ActionClass::NonUnitary;
    }
    if !is_unitary_up_to_scale(a, TOL_STRUCTURAL) {
        return ActionClass::NonUnitary;
    }
    let l = a.rows().trailing_zeros() as usize;
    let norm = match normalized_action(a, l as u32) {
        Ok(n) => n,
        Err(_) => return ActionClass::NonUnitary,
    };
    let nd = norm.adjoint();
    for q in 0..l {
        for p in [Pauli::X, Pauli::Z] {
            let image = norm.dot(&PauliString::single(l, q, p).to_matrix()).dot(&nd);
            if !proportional_to_pauli(&image, l, 1e-9) {
                return ActionClass::UnitaryNonClifford;
            }
        }
    }
    ActionClass::Clifford
}

fn rz_rx(phi: ExactAngle, theta: ExactAngle) -> ComplexMatrix {
    gates::rz(phi.radians()).dot(&gates::rx(theta.radians()))
}

/// The 2-to-1 gadget `I(φ, θ)` for `U = R_z(φ) R_x(θ)`: ancilla `|0>` with
/// `U` on wire 1, `CZ`, then `U†` and `<0|` on the system wire 0.
pub fn build_gadget_i(phi: ExactAngle, theta: ExactAngle) -> Gadget {
    let gamma = CliffordCircuit::new(2).with(CliffordGate::Cz(0, 1)).expect("two qubits");
    Gadget {
        k: 2,
        l: 1,
        u: rz_rx(phi, theta),
        ancilla_bits: BitString::zeros(1),
        gamma,
        postselect: alloc::vec![0],
        postselect_bits: BitString::zeros(1),
    }
}

/// The 2-to-1 gadget `J(φ, θ)`: ancilla `|0>` with `U` then `S` on wire 1,
/// `CZ`, then `U†` and `<0|` on the ancilla.
pub fn build_gadget_j(phi: ExactAngle, theta: ExactAngle) -> Gadget {
    let gamma = CliffordCircuit::new(2)
        .with(CliffordGate::S(1))
        .and_then(|c| c.with(CliffordGate::Cz(0, 1)))
        .expect("two qubits");
    Gadget {
        k: 2,
        l: 1,
        u: rz_rx(phi, theta),
        ancilla_bits: BitString::zeros(1),
        gamma,
        postselect: alloc::vec![1],
        postselect_bits: BitString::zeros(1),
    }
}

#[cfg(test)]
mod tests;
