use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::Serialize;

use crate::bits::BitString;
use crate::linalg::{gates, ComplexMatrix, LinalgError, Statevector};
use crate::stabilizer::{
    circuit_to_tableau, i_power, CliffordCircuit, CliffordGate, CliffordTableau, Direction, Pauli, PauliString,
};

use super::classify::{classify, decompose_unitary, ClassificationVerdict, ComplexityClass, UnitaryDecomposition};
use super::CccError;

/// A `U`-conjugated Clifford circuit on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct CccInstance {
    u: ComplexMatrix,
    decomposition: UnitaryDecomposition,
    v: CliffordCircuit,
}

impl CccInstance {
    pub fn new(u: ComplexMatrix, v: CliffordCircuit) -> Result<Self, CccError> {
        let decomposition = decompose_unitary(&u)?;
        Ok(Self { u, decomposition, v })
    }

    /// Builds `U` from exact angles, keeping them for classification.
    pub fn from_decomposition(decomposition: UnitaryDecomposition, v: CliffordCircuit) -> Self {
        Self { u: decomposition.matrix(), decomposition, v }
    }

    pub fn num_qubits(&self) -> usize {
        self.v.num_qubits()
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn v(&self) -> &CliffordCircuit {
        &self.v
    }

    pub fn decomposition(&self) -> &UnitaryDecomposition {
        &self.decomposition
    }

    pub fn classify(&self) -> ClassificationVerdict {
        classify(&self.decomposition)
    }
}

/// Probabilities `p_y` for all `y ∈ {0,1}^n`, indexed with qubit 0 as the
/// most significant bit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self, CccError> {
        if probs.len() != 1 << n {
            return Err(CccError::DimensionMismatch { left: 1 << n, right: probs.len() });
        }
        Ok(Self { n, probs })
    }

    /// Dense distribution from `(outcome, probability)` pairs; missing
    /// outcomes get probability zero.
    pub fn from_pairs(n: usize, pairs: &[(BitString, f64)], cap: usize) -> Result<Self, CccError> {
        if n > cap {
            return Err(LinalgError::DenseCapExceeded { n, cap }.into());
        }
        let mut probs = vec![0.0; 1 << n];
        for (y, p) in pairs {
            if y.len() != n {
                return Err(CccError::DimensionMismatch { left: n, right: y.len() });
            }
            probs[y.to_index()] += p;
        }
        Ok(Self { n, probs })
    }

    /// Empirical distribution of a sample.
    pub fn from_samples(n: usize, samples: &[BitString], cap: usize) -> Result<Self, CccError> {
        let w = 1.0 / samples.len().max(1) as f64;
        let pairs: Vec<(BitString, f64)> = samples.iter().map(|s| (s.clone(), w)).collect();
        Self::from_pairs(n, &pairs, cap)
    }

    pub fn point_mass(n: usize, y: &BitString) -> Result<Self, CccError> {
        Self::from_pairs(n, &[(y.clone(), 1.0)], usize::MAX)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, y: &BitString) -> f64 {
        self.probs[y.to_index()]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `P(y_j = 0)`.
    pub fn marginal_zero(&self, j: usize) -> f64 {
        let bit = 1usize << (self.n - 1 - j);
        self.probs.iter().enumerate().filter(|(i, _)| i & bit == 0).map(|(_, p)| p).sum()
    }
}

/// `½ Σ_y |p_y − q_y|`.
pub fn tv_distance(p: &OutcomeDistribution, q: &OutcomeDistribution) -> Result<f64, CccError> {
    if p.n != q.n {
        return Err(CccError::DimensionMismatch { left: p.n, right: q.n });
    }
    Ok(0.5 * p.probs.iter().zip(&q.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

fn final_state(inst: &CccInstance, cap: usize) -> Result<Statevector, CccError> {
    let n = inst.num_qubits();
    let mut state = Statevector::product_state(n, &inst.u, cap)?;
    inst.v.apply_to(&mut state)?;
    state.apply_to_all(&inst.u.adjoint())?;
    Ok(state)
}

/// Exact `p_{y,U,V}` for every `y` by statevector simulation.
pub fn dense_distribution(inst: &CccInstance, cap: usize) -> Result<OutcomeDistribution, CccError> {
    let state = final_state(inst, cap)?;
    OutcomeDistribution::new(inst.num_qubits(), state.probabilities())
}

/// A single `p_{y,U,V}`.
pub fn outcome_probability(inst: &CccInstance, y: &BitString, cap: usize) -> Result<f64, CccError> {
    if y.len() != inst.num_qubits() {
        return Err(CccError::DimensionMismatch { left: inst.num_qubits(), right: y.len() });
    }
    let state = final_state(inst, cap)?;
    Ok(state.amplitudes()[y.to_index()].norm_sqr())
}

/// Clifford reduction of an easy instance: the output distribution is that
/// of `W|0^n>` with every bit XORed by `flip_output`.
#[derive(Clone, Debug)]
pub struct EasyReduction {
    circuit: CliffordCircuit,
    tableau: CliffordTableau,
    flip_output: bool,
}

impl EasyReduction {
    pub fn new(inst: &CccInstance) -> Result<Self, CccError> {
        let verdict = inst.classify();
        let form = match (verdict.class, verdict.canonical_form) {
            (ComplexityClass::Pweak, Some(form)) => form,
            _ => return Err(CccError::NotEasy),
        };
        let n = inst.num_qubits();
        let d = inst.decomposition();
        let mut w = CliffordCircuit::new(n);
        let flip_output = if d.theta.in_two_pi_z() {
            // Z-rotations act trivially on basis states up to phase.
            w.extend(&inst.v)?;
            false
        } else if d.theta.in_pi_z() {
            for q in 0..n {
                w.push(CliffordGate::X(q))?;
            }
            w.extend(&inst.v)?;
            true
        } else {
            let inverse = form.gamma.inverse();
            for q in 0..n {
                w.extend_on_qubit(&form.gamma, q)?;
            }
            w.extend(&inst.v)?;
            for q in 0..n {
                w.extend_on_qubit(&inverse, q)?;
            }
            false
        };
        let tableau = circuit_to_tableau(&w);
        Ok(Self { circuit: w, tableau, flip_output })
    }

    pub fn circuit(&self) -> &CliffordCircuit {
        &self.circuit
    }

    pub fn flips_output(&self) -> bool {
        self.flip_output
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        let y = self.tableau.sample(rng);
        if self.flip_output {
            y.negated()
        } else {
            y
        }
    }

    /// The exact distribution the sampler draws from, sparse.
    pub fn exact_distribution(&self) -> Vec<(BitString, f64)> {
        let mut pairs: Vec<(BitString, f64)> = self
            .tableau
            .outcome_distribution()
            .into_iter()
            .map(|(y, p)| (if self.flip_output { y.negated() } else { y }, p))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs
    }
}

/// One sample from `D(U, V)` for a classically easy `U`.
pub fn simulate_easy_weak<R: Rng + ?Sized>(inst: &CccInstance, rng: &mut R) -> Result<BitString, CccError> {
    Ok(EasyReduction::new(inst)?.sample(rng))
}

/// Single-qubit marginals without dense simulation.
///
/// With `U Z U† = aX + bY + cZ`, `P(y_j = 0) = (1 + Σ_σ c_σ <ψ|V† σ_j V|ψ>)/2`
/// where `|ψ> = U^{⊗n}|0^n>`. Each `V† σ_j V` comes from the tableau and its
/// expectation on the product state factorises over qubits.
#[derive(Clone, Debug)]
pub struct MarginalSimulator {
    n: usize,
    tableau: CliffordTableau,
    coeffs: [f64; 3],
    bloch: [f64; 3],
}

impl MarginalSimulator {
    pub fn new(inst: &CccInstance) -> Self {
        let u = &inst.u;
        let m = u.dot(&gates::z()).dot(&u.adjoint());
        let coeff = |p: ComplexMatrix| (m.dot(&p).trace() / 2.0).re;
        let coeffs = [coeff(gates::x()), coeff(gates::y()), coeff(gates::z())];
        let (a0, a1) = (u[(0, 0)], u[(1, 0)]);
        let cross = a0.conj() * a1;
        let bloch = [2.0 * cross.re, 2.0 * cross.im, a0.norm_sqr() - a1.norm_sqr()];
        Self { n: inst.num_qubits(), tableau: circuit_to_tableau(&inst.v), coeffs, bloch }
    }

    fn product_expectation(&self, p: &PauliString) -> f64 {
        let mut acc = i_power(p.phase() as u32);
        for q in 0..self.n {
            acc *= match p.get(q) {
                Pauli::I => 1.0,
                Pauli::X => self.bloch[0],
                Pauli::Y => self.bloch[1],
                Pauli::Z => self.bloch[2],
            };
        }
        debug_assert!(acc.im.abs() < 1e-9);
        acc.re
    }

    /// `P(y_j = 0)`.
    pub fn marginal(&self, j: usize) -> Result<f64, CccError> {
        if j >= self.n {
            return Err(CccError::QubitOutOfRange { qubit: j, n: self.n });
        }
        let mut p0 = 1.0;
        for (pauli, c) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().zip(self.coeffs) {
            let back = self.tableau.conjugate(&PauliString::single(self.n, j, pauli), Direction::Backward)?;
            p0 += c * self.product_expectation(&back);
        }
        Ok((p0 / 2.0).clamp(0.0, 1.0))
    }

    /// Weak(1): an independent coin flip per qubit on its marginal.
    pub fn sample_marginals<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BitString, CccError> {
        let bits =
            (0..self.n).map(|j| Ok(rng.gen::<f64>() >= self.marginal(j)?)).collect::<Result<Vec<bool>, CccError>>()?;
        Ok(BitString::from_bits(bits))
    }
}

/// `P(y_j = 0)` for the instance, in `O(n·|V| + n²)`.
pub fn marginal_single_qubit(inst: &CccInstance, j: usize) -> Result<f64, CccError> {
    MarginalSimulator::new(inst).marginal(j)
}
