//! Measurement-based constructions for `U = Rz(θ)H`: the teleportation
//! gadget and its chains, the X-inserted gadget giving `X^b H Rz(2θ)`, the
//! conjugated CZ gadget, Bloch rotation angles and the universality
//! decision for rational `θ/π`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::Ratio;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bits::BitString;
use crate::ccc::ExactAngle;
use crate::linalg::{c64, gates, is_unitary, ComplexMatrix, LinalgError, Statevector, DEFAULT_DENSE_CAP};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MbqcError {
    #[error("wire {wire} out of range for {wires} wires")]
    BadWire { wire: usize, wires: usize },
    #[error("wire {0} is used twice")]
    RepeatedWire(usize),
    #[error("fragment has {wires} wires, above the dense cap {cap}")]
    TooWide { wires: usize, cap: usize },
    #[error("a teleportation chain needs at least one stage")]
    EmptyChain,
    #[error("matrix is not a 2x2 unitary")]
    NotUnitary,
    #[error("the universality decision needs an exact rational multiple of pi")]
    InexactAngle,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Gates allowed inside a fragment.
#[derive(Clone, Debug, PartialEq)]
pub enum FragmentGate {
    H(usize),
    X(usize),
    S(usize),
    Rz(usize, f64),
    Cz(usize, usize),
    Cnot(usize, usize),
    /// An arbitrary single-qubit gate, used for `U` and `U†`.
    Single(usize, ComplexMatrix),
}

impl FragmentGate {
    fn parts(&self) -> (ComplexMatrix, Vec<usize>) {
        match self {
            FragmentGate::H(w) => (gates::h(), vec![*w]),
            FragmentGate::X(w) => (gates::x(), vec![*w]),
            FragmentGate::S(w) => (gates::s(), vec![*w]),
            FragmentGate::Rz(w, t) => (gates::rz(*t), vec![*w]),
            FragmentGate::Cz(a, b) => (gates::cz(), vec![*a, *b]),
            FragmentGate::Cnot(a, b) => (gates::cnot(), vec![*a, *b]),
            FragmentGate::Single(w, m) => (m.clone(), vec![*w]),
        }
    }
}

/// A circuit on `wires` wires with some wires fed by fixed ancilla bits and
/// some measured and postselected. Unlisted input wires carry the system
/// input; unlisted output wires carry the system output, both in ascending
/// wire order with the lowest wire most significant.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PostselectedFragment {
    pub wires: usize,
    pub ancillas: Vec<(usize, bool)>,
    pub gates: Vec<FragmentGate>,
    pub postselect: Vec<(usize, bool)>,
}

impl PostselectedFragment {
    pub fn new(wires: usize) -> Self {
        Self { wires, ..Self::default() }
    }

    pub fn ancilla(mut self, wire: usize, bit: bool) -> Self {
        self.ancillas.push((wire, bit));
        self
    }

    pub fn gate(mut self, g: FragmentGate) -> Self {
        self.gates.push(g);
        self
    }

    pub fn postselect(mut self, wire: usize, bit: bool) -> Self {
        self.postselect.push((wire, bit));
        self
    }

    fn free(&self, used: &[(usize, bool)]) -> Vec<usize> {
        (0..self.wires).filter(|w| !used.iter().any(|(u, _)| u == w)).collect()
    }

    pub fn input_wires(&self) -> Vec<usize> {
        self.free(&self.ancillas)
    }

    pub fn output_wires(&self) -> Vec<usize> {
        self.free(&self.postselect)
    }

    fn validate(&self) -> Result<(), MbqcError> {
        if self.wires > DEFAULT_DENSE_CAP {
            return Err(MbqcError::TooWide { wires: self.wires, cap: DEFAULT_DENSE_CAP });
        }
        for list in [&self.ancillas, &self.postselect] {
            for (i, &(w, _)) in list.iter().enumerate() {
                if w >= self.wires {
                    return Err(MbqcError::BadWire { wire: w, wires: self.wires });
                }
                if list[..i].iter().any(|&(u, _)| u == w) {
                    return Err(MbqcError::RepeatedWire(w));
                }
            }
        }
        Ok(())
    }

    /// The linear map from system inputs to system outputs.
    pub fn contract(&self) -> Result<ComplexMatrix, MbqcError> {
        self.validate()?;
        let ins = self.input_wires();
        let outs = self.output_wires();
        let k = self.wires;
        let bit_of = |index: usize, wire: usize| (index >> (k - 1 - wire)) & 1 == 1;
        let mut fixed_in = 0usize;
        for &(w, b) in &self.ancillas {
            fixed_in |= (b as usize) << (k - 1 - w);
        }
        let parts: Vec<_> = self.gates.iter().map(FragmentGate::parts).collect();
        let mut m = ComplexMatrix::zeros(1 << outs.len(), 1 << ins.len());
        for col in 0..1usize << ins.len() {
            let mut index = fixed_in;
            for (j, &w) in ins.iter().enumerate() {
                if (col >> (ins.len() - 1 - j)) & 1 == 1 {
                    index |= 1 << (k - 1 - w);
                }
            }
            let mut state = Statevector::basis_with_cap(k, index, DEFAULT_DENSE_CAP)?;
            for (g, targets) in &parts {
                state.apply_gate(g, targets)?;
            }
            for (full, &amp) in state.amplitudes().iter().enumerate() {
                if self.postselect.iter().any(|&(w, b)| bit_of(full, w) != b) {
                    continue;
                }
                let row = outs.iter().fold(0usize, |acc, &w| (acc << 1) | bit_of(full, w) as usize);
                m[(row, col)] += amp;
            }
        }
        Ok(m)
    }
}

/// Stage `i` of a chain: system on wire `i`, fresh `|0>` ancilla on wire
/// `i + 1` rotated by `H`, then CZ, `H` on the system wire and postselection.
fn teleport_fragment(bits: &BitString) -> PostselectedFragment {
    let m = bits.len();
    let mut f = PostselectedFragment::new(m + 1);
    for i in 0..m {
        f = f
            .ancilla(i + 1, false)
            .gate(FragmentGate::H(i + 1))
            .gate(FragmentGate::Cz(i, i + 1))
            .gate(FragmentGate::H(i))
            .postselect(i, bits.get(i));
    }
    f
}

/// Contracts the chain of teleportation gadgets; stage `i` enacts
/// `X^{b_i} H`, applied in order, so the result is
/// `∏_{i=m..1} X^{b_i} H` up to a scalar.
pub fn teleport_chain(bits: &BitString) -> Result<ComplexMatrix, MbqcError> {
    if bits.is_empty() {
        return Err(MbqcError::EmptyChain);
    }
    teleport_fragment(bits).contract()
}

/// `∏ X^{b_i} H` in circuit order, the oracle for [`teleport_chain`].
pub fn teleport_product(bits: &BitString) -> ComplexMatrix {
    bits.as_slice().iter().fold(gates::identity(), |acc, &b| {
        let step = if b { gates::x().dot(&gates::h()) } else { gates::h() };
        step.dot(&acc)
    })
}

/// The X-inserted gadget with every line conjugated by `Rz(θ)`: enacts
/// `X^b H Rz(2θ)` up to a scalar.
pub fn g_gadget_fragment(theta: f64, bit: bool) -> PostselectedFragment {
    PostselectedFragment::new(2)
        .ancilla(1, false)
        .gate(FragmentGate::H(1))
        .gate(FragmentGate::Rz(0, theta))
        .gate(FragmentGate::Rz(1, theta))
        .gate(FragmentGate::Cz(0, 1))
        .gate(FragmentGate::X(0))
        .gate(FragmentGate::Rz(0, -theta))
        .gate(FragmentGate::Rz(1, -theta))
        .gate(FragmentGate::H(0))
        .postselect(0, bit)
}

pub fn g_gadget(theta: ExactAngle, bit: bool) -> Result<ComplexMatrix, MbqcError> {
    g_gadget_fragment(theta.radians(), bit).contract()
}

/// `X^b H Rz(2θ)`.
pub fn g_closed_form(theta: f64, bit: bool) -> ComplexMatrix {
    let g0 = gates::h().dot(&gates::rz(2.0 * theta));
    if bit {
        gates::x().dot(&g0)
    } else {
        g0
    }
}

/// CZ with both wires conjugated by `Rz(θ)`; the rotations cancel.
pub fn cz_between_gadget_wires(theta: f64) -> Result<ComplexMatrix, MbqcError> {
    PostselectedFragment::new(2)
        .gate(FragmentGate::Rz(0, theta))
        .gate(FragmentGate::Rz(1, theta))
        .gate(FragmentGate::Cz(0, 1))
        .gate(FragmentGate::Rz(0, -theta))
        .gate(FragmentGate::Rz(1, -theta))
        .contract()
}

/// Rotation of the Bloch sphere enacted by a single-qubit unitary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlochRotation {
    /// `None` when the gate is a multiple of the identity.
    pub axis: Option<[f64; 3]>,
    /// Rotation angle in `[0, π]` with `cos(angle/2) = |tr G'|/2`.
    pub angle: f64,
    /// `Re tr(G/√det G)/2` with the principal square root, before the sign
    /// is fixed.
    pub half_angle_cos_raw: f64,
}

impl BlochRotation {
    /// `cos(angle) = 2cos²(angle/2) − 1`, independent of the sign convention.
    pub fn cos_angle(&self) -> f64 {
        2.0 * self.half_angle_cos_raw * self.half_angle_cos_raw - 1.0
    }
}

/// Strips the global phase of `G` (divide by `√det`, then flip the sign so
/// the trace has nonnegative real part) and reads off angle and axis.
pub fn rotation_angle(g: &ComplexMatrix) -> Result<BlochRotation, MbqcError> {
    if g.rows() != 2 || g.cols() != 2 || !is_unitary(g, crate::TOL_STRUCTURAL) {
        return Err(MbqcError::NotUnitary);
    }
    let root = g.det()?.sqrt();
    let mut su = g.scale(Complex64::one() / root);
    let raw = su.trace().re / 2.0;
    if raw < 0.0 {
        su = su.scale(c64(-1.0, 0.0));
    }
    let half_cos = raw.abs().min(1.0);
    let angle = 2.0 * half_cos.acos();
    let half_sin = (angle / 2.0).sin();
    let axis = if half_sin < crate::TOL_STRUCTURAL {
        None
    } else {
        // G' = cos(φ/2) I − i sin(φ/2) n·σ, so n_k = i tr(G' σ_k) / (2 sin(φ/2)).
        let comp = |p: ComplexMatrix| (Complex64::i() * su.dot(&p).trace()).re / (2.0 * half_sin);
        let v = [comp(gates::x()), comp(gates::y()), comp(gates::z())];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        Some([v[0] / norm, v[1] / norm, v[2] / norm])
    };
    Ok(BlochRotation { axis, angle, half_angle_cos_raw: raw })
}

/// Which of the two gadget gates is a rotation by an irrational multiple
/// of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GadgetGate {
    G0,
    G1,
}

/// Exact values of `cos φ_0 = sin²θ − 1` and `cos φ_1 = cos²θ − 1`, when
/// they are rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCosines {
    pub cos_phi0: String,
    pub cos_phi1: String,
}

/// Verdict on whether `{H Rz(2θ), X H Rz(2θ)}` is universal on a qubit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalityVerdict {
    pub theta: ExactAngle,
    pub universal: bool,
    pub reason: String,
    /// Gates certified to rotate by an irrational multiple of `π`. `None`
    /// when the cosines are irrational, so a rational-cosine argument does
    /// not single out a gate (at least one still is irrational when
    /// `universal` holds).
    pub irrational_witness: Option<Vec<GadgetGate>>,
    pub exact_cosines: Option<ExactCosines>,
}

/// The rational values taken by `cos(rπ)` for rational `r`.
fn is_niven_value(v: Ratio<i64>) -> bool {
    let half = Ratio::new(1, 2);
    v.is_zero() || v == half || v == -half || v == Ratio::one() || v == -Ratio::one()
}

/// Exact `cos(pπ/q)` when it is rational.
fn rational_cos(num: i64, den: i64) -> Option<Ratio<i64>> {
    // Reduce the angle to turns in [0, 2): pπ/q = (p/q)π.
    let r = Ratio::new(num, den);
    let two = Ratio::from_integer(2);
    let reduced = r - two * (r / two).floor();
    let table = [
        (Ratio::zero(), Ratio::one()),
        (Ratio::new(1, 3), Ratio::new(1, 2)),
        (Ratio::new(1, 2), Ratio::zero()),
        (Ratio::new(2, 3), Ratio::new(-1, 2)),
        (Ratio::one(), -Ratio::one()),
        (Ratio::new(4, 3), Ratio::new(-1, 2)),
        (Ratio::new(3, 2), Ratio::zero()),
        (Ratio::new(5, 3), Ratio::new(1, 2)),
    ];
    table.iter().find(|(t, _)| *t == reduced).map(|&(_, c)| c)
}

/// Decides universality for `θ = (p/q)π`. Universal exactly when `θ` is not
/// a multiple of `π/4`. A gate is a certified irrational rotation when its
/// cosine is rational but outside `{0, ±1/2, ±1}`.
pub fn universality_check(theta: ExactAngle) -> Result<UniversalityVerdict, MbqcError> {
    let r = theta.as_ratio().ok_or(MbqcError::InexactAngle)?;
    let (p, q) = (*r.numer(), *r.denom());
    let universal = !theta.in_quarter_pi_z();
    // cos φ_0 = −(1 + cos 2θ)/2 and cos φ_1 = (cos 2θ − 1)/2.
    let cosines = rational_cos(2 * p, q).map(|c2| {
        let half = Ratio::new(1, 2);
        (-(Ratio::one() + c2) * half, (c2 - Ratio::one()) * half)
    });
    let exact_cosines = cosines.map(|(c0, c1)| ExactCosines { cos_phi0: c0.to_string(), cos_phi1: c1.to_string() });
    let irrational_witness = cosines.map(|(c0, c1)| {
        [(GadgetGate::G0, c0), (GadgetGate::G1, c1)]
            .into_iter()
            .filter(|&(_, c)| !is_niven_value(c))
            .map(|(g, _)| g)
            .collect::<Vec<_>>()
    });
    let reason = if universal {
        String::from("theta is not a multiple of pi/4, so one gadget gate rotates by an irrational multiple of pi and neither rotates by pi")
    } else if theta.in_half_pi_z() {
        String::from("theta is a multiple of pi/2: rotation angles {pi/2, pi}, both finite order")
    } else {
        String::from("theta is an odd multiple of pi/4: rotation angles {2pi/3, 2pi/3}, both finite order")
    };
    Ok(UniversalityVerdict { theta, universal, reason, irrational_witness, exact_cosines })
}
