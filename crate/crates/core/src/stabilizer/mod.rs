//! Pauli strings, Clifford tableaus and stabilizer sampling.

mod circuit;
mod enumerate;
mod pauli;
mod random;
mod tableau;

use rand::Rng;

pub use circuit::{CliffordCircuit, CliffordGate, Generator};
pub use enumerate::{CliffordClassTable, MAX_ENUMERATED_QUBITS};
pub use pauli::{Pauli, PauliString};
pub use random::random_clifford;
pub use tableau::{CliffordTableau, Direction};

pub(crate) use pauli::i_power;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilizerError {
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} used twice in one gate")]
    RepeatedQubit(usize),
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("rows do not form a Clifford tableau")]
    InvalidTableau,
    #[error("cannot enumerate the {n}-qubit Clifford group (at most {max} qubits)")]
    TooManyQubits { n: usize, max: usize },
}

/// Folds the circuit's gates into a tableau.
pub fn circuit_to_tableau(c: &CliffordCircuit) -> CliffordTableau {
    CliffordTableau::from_circuit(c).expect("circuit gates are validated on insertion")
}

/// `Γ p Γ†` or `Γ† p Γ`, with exact phase.
pub fn conjugate_pauli(t: &CliffordTableau, p: &PauliString, dir: Direction) -> Result<PauliString, StabilizerError> {
    t.conjugate(p, dir)
}

/// Draws `y` with probability `|<y|Γ|0^n>|²`.
pub fn sample_measurement<R: Rng + ?Sized>(t: &CliffordTableau, rng: &mut R) -> crate::BitString {
    t.sample(rng)
}

/// A random word of `len` generators on `n` qubits. Not uniform over the
/// group; used for test corpora and demos.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(n);
    for _ in 0..len {
        let pick = if n > 1 { rng.gen_range(0..3) } else { rng.gen_range(0..2) };
        let g = match pick {
            0 => Generator::H(rng.gen_range(0..n)),
            1 => Generator::S(rng.gen_range(0..n)),
            _ => {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                Generator::Cnot(a, b)
            }
        };
        c.push_generator(g).expect("indices in range");
    }
    c
}
