use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{gates, ComplexMatrix, LinalgError, Statevector};

use super::StabilizerError;

/// One of the three generators every Clifford circuit is reduced to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    H(usize),
    S(usize),
    Cnot(usize, usize),
}

impl Generator {
    pub fn max_qubit(&self) -> usize {
        match *self {
            Generator::H(q) | Generator::S(q) => q,
            Generator::Cnot(c, t) => c.max(t),
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Generator::H(_) => gates::h(),
            Generator::S(_) => gates::s(),
            Generator::Cnot(..) => gates::cnot(),
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Generator::H(q) | Generator::S(q) => alloc::vec![q],
            Generator::Cnot(c, t) => alloc::vec![c, t],
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::H(q) => write!(f, "H {q}"),
            Generator::S(q) => write!(f, "S {q}"),
            Generator::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
        }
    }
}

/// Clifford gates accepted by circuit builders; everything except the
/// generators desugars on insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl CliffordGate {
    fn qubits(&self) -> (usize, Option<usize>) {
        use CliffordGate::*;
        match *self {
            H(q) | S(q) | Sdg(q) | X(q) | Y(q) | Z(q) => (q, None),
            Cnot(a, b) | Cz(a, b) => (a, Some(b)),
        }
    }

    /// Generator sequence in time order. Equal to the gate up to global phase.
    pub fn desugar(&self) -> Vec<Generator> {
        use Generator::{Cnot, H, S};
        match *self {
            CliffordGate::H(q) => alloc::vec![H(q)],
            CliffordGate::S(q) => alloc::vec![S(q)],
            CliffordGate::Sdg(q) => alloc::vec![S(q), S(q), S(q)],
            CliffordGate::Z(q) => alloc::vec![S(q), S(q)],
            CliffordGate::X(q) => alloc::vec![H(q), S(q), S(q), H(q)],
            // Y ∝ XZ: Z first, then X.
            CliffordGate::Y(q) => alloc::vec![S(q), S(q), H(q), S(q), S(q), H(q)],
            CliffordGate::Cnot(c, t) => alloc::vec![Cnot(c, t)],
            CliffordGate::Cz(a, b) => alloc::vec![H(b), Cnot(a, b), H(b)],
        }
    }
}

/// A Clifford circuit over `{H, S, CNOT}` on `n` qubits, gates in time order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Generator>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Generator] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate, desugaring it to generators.
    pub fn push(&mut self, gate: CliffordGate) -> Result<&mut Self, StabilizerError> {
        let (a, b) = gate.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= self.n {
                return Err(StabilizerError::QubitOutOfRange { qubit: q, n: self.n });
            }
        }
        if b == Some(a) {
            return Err(StabilizerError::RepeatedQubit(a));
        }
        self.gates.extend(gate.desugar());
        Ok(self)
    }

    pub fn push_generator(&mut self, g: Generator) -> Result<&mut Self, StabilizerError> {
        if g.max_qubit() >= self.n {
            return Err(StabilizerError::QubitOutOfRange { qubit: g.max_qubit(), n: self.n });
        }
        if let Generator::Cnot(c, t) = g {
            if c == t {
                return Err(StabilizerError::RepeatedQubit(c));
            }
        }
        self.gates.push(g);
        Ok(self)
    }

    pub fn with(mut self, gate: CliffordGate) -> Result<Self, StabilizerError> {
        self.push(gate)?;
        Ok(self)
    }

    /// Appends all gates of `other` (same width).
    pub fn extend(&mut self, other: &CliffordCircuit) -> Result<(), StabilizerError> {
        if other.n != self.n {
            return Err(StabilizerError::DimensionMismatch { left: self.n, right: other.n });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Copies a single-qubit circuit onto `qubit` of this circuit.
    pub fn extend_on_qubit(&mut self, single: &CliffordCircuit, qubit: usize) -> Result<(), StabilizerError> {
        for g in single.gates() {
            let mapped = match *g {
                Generator::H(_) => Generator::H(qubit),
                Generator::S(_) => Generator::S(qubit),
                Generator::Cnot(..) => return Err(StabilizerError::DimensionMismatch { left: 1, right: 2 }),
            };
            self.push_generator(mapped)?;
        }
        Ok(())
    }

    /// Circuit for the inverse, up to global phase (`S† = S³`).
    pub fn inverse(&self) -> CliffordCircuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            match *g {
                Generator::S(q) => gates.extend([Generator::S(q); 3]),
                other => gates.push(other),
            }
        }
        CliffordCircuit { n: self.n, gates }
    }

    /// Applies the circuit to a dense state.
    pub fn apply_to(&self, state: &mut Statevector) -> Result<(), LinalgError> {
        for g in &self.gates {
            state.apply_gate(&g.matrix(), &g.targets())?;
        }
        Ok(())
    }

    /// Dense unitary (exact, including global phase).
    pub fn to_matrix(&self) -> Result<ComplexMatrix, LinalgError> {
        let dim = 1usize << self.n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut s = Statevector::basis_with_cap(self.n, col, crate::linalg::DEFAULT_DENSE_CAP)?;
            self.apply_to(&mut s)?;
            for (row, &v) in s.amplitudes().iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
