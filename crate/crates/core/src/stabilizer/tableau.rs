use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;
use rand::Rng;

use crate::bits::BitString;
use crate::linalg::{ComplexMatrix, LinalgError, Statevector};

use super::circuit::{CliffordCircuit, Generator};
use super::pauli::{Pauli, PauliString};
use super::StabilizerError;

/// Which way to conjugate a Pauli through a Clifford `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Γ P Γ†`
    Forward,
    /// `Γ† P Γ`
    Backward,
}

/// Tableau of an `n`-qubit Clifford `Γ` modulo global phase.
///
/// Row `i < n` is the destabilizer `Γ X_i Γ†`, row `n + i` the stabilizer
/// `Γ Z_i Γ†`. Each row is a Hermitian Pauli string whose phase is 0 or 2.
/// The stabilizer rows stabilize `Γ|0^n>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordTableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        rows.extend((0..n).map(|q| PauliString::single(n, q, Pauli::X)));
        rows.extend((0..n).map(|q| PauliString::single(n, q, Pauli::Z)));
        Self { n, rows }
    }

    /// Builds a tableau from explicit rows; fails unless they satisfy the
    /// symplectic constraints and are Hermitian.
    pub fn from_rows(n: usize, rows: Vec<PauliString>) -> Result<Self, StabilizerError> {
        if rows.len() != 2 * n || rows.iter().any(|r| r.num_qubits() != n) {
            return Err(StabilizerError::InvalidTableau);
        }
        let t = Self { n, rows };
        if !t.is_valid() {
            return Err(StabilizerError::InvalidTableau);
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn destabilizer(&self, i: usize) -> &PauliString {
        &self.rows[i]
    }

    pub fn stabilizer(&self, i: usize) -> &PauliString {
        &self.rows[self.n + i]
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    /// Checks the commutation structure: destabilizers commute among
    /// themselves, stabilizers too, and destabilizer `i` anticommutes with
    /// stabilizer `j` exactly when `i == j`.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.rows.iter().any(|r| r.phase() & 1 == 1) {
            return false;
        }
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let anti = !self.rows[i].commutes_with(&self.rows[j]);
                let expected = i < n && j == i + n;
                if anti != expected {
                    return false;
                }
            }
        }
        true
    }

    fn check_qubit(&self, q: usize) -> Result<(), StabilizerError> {
        if q >= self.n {
            return Err(StabilizerError::QubitOutOfRange { qubit: q, n: self.n });
        }
        Ok(())
    }

    fn flip_sign(row: &mut PauliString, flip: bool) {
        if flip {
            row.set_phase(row.phase() ^ 2);
        }
    }

    pub fn apply_h(&mut self, q: usize) -> Result<&mut Self, StabilizerError> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            let (x, z) = (row.x_bit(q), row.z_bit(q));
            Self::flip_sign(row, x && z);
            row.set_x(q, z);
            row.set_z(q, x);
        }
        Ok(self)
    }

    pub fn apply_s(&mut self, q: usize) -> Result<&mut Self, StabilizerError> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            let (x, z) = (row.x_bit(q), row.z_bit(q));
            Self::flip_sign(row, x && z);
            row.set_z(q, z ^ x);
        }
        Ok(self)
    }

    pub fn apply_cnot(&mut self, c: usize, t: usize) -> Result<&mut Self, StabilizerError> {
        self.check_qubit(c)?;
        self.check_qubit(t)?;
        if c == t {
            return Err(StabilizerError::RepeatedQubit(c));
        }
        for row in &mut self.rows {
            let (xc, zc, xt, zt) = (row.x_bit(c), row.z_bit(c), row.x_bit(t), row.z_bit(t));
            Self::flip_sign(row, xc && zt && !(xt ^ zc));
            row.set_x(t, xt ^ xc);
            row.set_z(c, zc ^ zt);
        }
        Ok(self)
    }

    /// Conjugates the tableau by one generator (`Γ ← g Γ`). O(n).
    pub fn apply(&mut self, g: Generator) -> Result<&mut Self, StabilizerError> {
        match g {
            Generator::H(q) => self.apply_h(q),
            Generator::S(q) => self.apply_s(q),
            Generator::Cnot(c, t) => self.apply_cnot(c, t),
        }
    }

    pub fn from_circuit(c: &CliffordCircuit) -> Result<Self, StabilizerError> {
        let mut t = Self::identity(c.num_qubits());
        for &g in c.gates() {
            t.apply(g)?;
        }
        Ok(t)
    }

    /// Conjugates a Pauli string through `Γ` in the requested direction,
    /// keeping the exact phase. O(n²).
    pub fn conjugate(&self, p: &PauliString, dir: Direction) -> Result<PauliString, StabilizerError> {
        if p.num_qubits() != self.n {
            return Err(StabilizerError::DimensionMismatch { left: self.n, right: p.num_qubits() });
        }
        match dir {
            Direction::Forward => Ok(self.forward(p)),
            Direction::Backward => Ok(self.backward(p)),
        }
    }

    fn forward(&self, p: &PauliString) -> PauliString {
        // p = i^k ⊗σ_j and Y = iXZ, so p = i^{k+#Y} ∏_j X_j^{x_j} Z_j^{z_j}.
        let mut out = PauliString::identity(self.n);
        let mut ys = 0u8;
        for q in 0..self.n {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && z {
                ys += 1;
            }
            if x {
                out = out.mul(&self.rows[q]).expect("same width");
            }
            if z {
                out = out.mul(&self.rows[self.n + q]).expect("same width");
            }
        }
        out.set_phase(out.phase() + p.phase() + ys);
        out
    }

    fn backward(&self, p: &PauliString) -> PauliString {
        // Commutation is preserved, which fixes the preimage bits.
        let mut pre = PauliString::identity(self.n);
        for q in 0..self.n {
            let x = self.rows[self.n + q].symplectic_product(p) == 1;
            let z = self.rows[q].symplectic_product(p) == 1;
            pre.set(q, Pauli::from_bits(x, z));
        }
        let image = self.forward(&pre);
        pre.set_phase(p.phase() + 4 - image.phase());
        pre
    }

    /// Measures qubit `a` of the stabilizer state, mutating the tableau.
    /// `choose` supplies the outcome when it is random. Returns the outcome
    /// and whether it was random.
    pub fn measure(&mut self, a: usize, choose: impl FnOnce() -> bool) -> Result<(bool, bool), StabilizerError> {
        self.check_qubit(a)?;
        let n = self.n;
        let pivot = (n..2 * n).find(|&r| self.rows[r].x_bit(a));
        match pivot {
            Some(p) => {
                let pivot_row = self.rows[p].clone();
                for i in 0..2 * n {
                    if i != p && self.rows[i].x_bit(a) {
                        self.rows[i].left_mul_assign(&pivot_row);
                    }
                }
                let outcome = choose();
                self.rows[p - n] = pivot_row;
                let mut z = PauliString::single(n, a, Pauli::Z);
                if outcome {
                    z.set_phase(2);
                }
                self.rows[p] = z;
                Ok((outcome, true))
            }
            None => {
                let mut scratch = PauliString::identity(n);
                for i in 0..n {
                    if self.rows[i].x_bit(a) {
                        scratch.left_mul_assign(&self.rows[n + i]);
                    }
                }
                debug_assert!(scratch.weight() == 1 && scratch.get(a) == Pauli::Z);
                Ok((scratch.is_negative(), false))
            }
        }
    }

    /// Draws `y` with probability `|<y|Γ|0^n>|²`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        let mut t = self.clone();
        let bits = (0..self.n).map(|q| t.measure(q, || rng.gen::<bool>()).expect("qubit in range").0).collect();
        BitString::from_bits(bits)
    }

    /// Exact outcome distribution as `(outcome, probability)` pairs sorted by
    /// outcome. Enumerates the random branches, so the cost grows with the
    /// support size.
    pub fn outcome_distribution(&self) -> Vec<(BitString, f64)> {
        let mut out = Vec::new();
        self.branch(self.clone(), 0, Vec::with_capacity(self.n), 1.0, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn branch(&self, t: Self, q: usize, prefix: Vec<bool>, weight: f64, out: &mut Vec<(BitString, f64)>) {
        if q == self.n {
            out.push((BitString::from_bits(prefix), weight));
            return;
        }
        let mut probe = t.clone();
        let (first, random) = probe.measure(q, || false).expect("qubit in range");
        if random {
            let mut one = t;
            one.measure(q, || true).expect("qubit in range");
            let mut p0 = prefix.clone();
            p0.push(false);
            self.branch(probe, q + 1, p0, weight / 2.0, out);
            let mut p1 = prefix;
            p1.push(true);
            self.branch(one, q + 1, p1, weight / 2.0, out);
        } else {
            let mut p = prefix;
            p.push(first);
            self.branch(probe, q + 1, p, weight, out);
        }
    }

    /// Dense `Γ|0^n>`, up to global phase.
    pub fn stabilizer_state(&self, cap: usize) -> Result<Statevector, LinalgError> {
        let n = self.n;
        // A basis state in the support has nonzero overlap with the state.
        let mut probe = self.clone();
        let support: Vec<bool> = (0..n).map(|q| probe.measure(q, || false).expect("in range").0).collect();
        let index = BitString::from_bits(support).to_index();
        let mut state = Statevector::basis_with_cap(n, index, cap)?;
        for i in 0..n {
            let image = self.rows[n + i].apply_to(&state).expect("same width");
            let summed: Vec<Complex64> =
                state.amplitudes().iter().zip(image.amplitudes()).map(|(a, b)| (a + b) * 0.5).collect();
            state = Statevector::from_amplitudes(n, summed)?;
        }
        let norm = state.norm_sqr().sqrt();
        for a in state.amplitudes_mut() {
            *a /= norm;
        }
        Ok(state)
    }

    /// Dense `Γ|ψ>` up to a global phase that depends only on `Γ`, so
    /// relative phases between different inputs are consistent.
    pub fn apply_to_state(&self, psi: &Statevector, cap: usize) -> Result<Statevector, LinalgError> {
        let n = self.n;
        if psi.num_qubits() != n {
            return Err(LinalgError::DimensionMismatch { left: (n, 0), right: (psi.num_qubits(), 0) });
        }
        // Γ|x> = (∏ D_i^{x_i}) Γ|0>; walk x in Gray-code order.
        let mut column = self.stabilizer_state(cap)?;
        let dim = 1usize << n;
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        let amps = psi.amplitudes();
        let mut gray = 0usize;
        for k in 0..dim {
            if k > 0 {
                let flip = k.trailing_zeros() as usize;
                gray ^= 1 << flip;
                column = self.rows[n - 1 - flip].apply_to(&column).expect("same width");
            }
            let coeff = amps[gray];
            if coeff.norm_sqr() != 0.0 {
                for (a, c) in acc.iter_mut().zip(column.amplitudes()) {
                    *a += coeff * c;
                }
            }
        }
        Statevector::from_amplitudes(n, acc)
    }

    /// Dense unitary, up to global phase.
    pub fn to_unitary(&self, cap: usize) -> Result<ComplexMatrix, LinalgError> {
        let n = self.n;
        let dim = 1usize << n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        let mut column = self.stabilizer_state(cap)?;
        let mut gray = 0usize;
        for k in 0..dim {
            if k > 0 {
                let flip = k.trailing_zeros() as usize;
                gray ^= 1 << flip;
                column = self.rows[n - 1 - flip].apply_to(&column).expect("same width");
            }
            for (row, &v) in column.amplitudes().iter().enumerate() {
                m[(row, gray)] = v;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{equal_up_to_phase, gates, DEFAULT_DENSE_CAP};
    use crate::stabilizer::circuit::CliffordGate;
    use crate::stabilizer::random_circuit;
    use alloc::string::ToString;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_stabilizes_zero() {
        let t = CliffordTableau::identity(3);
        assert!(t.is_valid());
        for q in 0..3 {
            assert_eq!(t.stabilizer(q).label(), PauliString::single(3, q, Pauli::Z).label());
        }
    }

    #[test]
    fn hadamard_swaps_x_and_z() {
        let mut t = CliffordTableau::identity(1);
        t.apply_h(0).unwrap();
        assert_eq!(t.stabilizer(0).get(0), Pauli::X);
        assert_eq!(t.destabilizer(0).get(0), Pauli::Z);
    }

    #[test]
    fn cnot_spreads_x() {
        let mut t = CliffordTableau::identity(2);
        t.apply_cnot(0, 1).unwrap();
        assert_eq!(t.destabilizer(0).label(), "XX");
        let img = t.conjugate(&PauliString::single(2, 1, Pauli::Z), Direction::Forward).unwrap();
        assert_eq!(img.label(), "ZZ");
        assert_eq!(img.phase(), 0);
    }

    #[test]
    fn s_has_order_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_circuit(3, 30, &mut rng);
        let t0 = CliffordTableau::from_circuit(&c).unwrap();
        let mut t = t0.clone();
        for _ in 0..4 {
            t.apply_s(1).unwrap();
        }
        assert_eq!(t, t0);
    }

    #[test]
    fn empty_and_hh_give_identity() {
        let id = CliffordTableau::identity(2);
        assert_eq!(CliffordTableau::from_circuit(&CliffordCircuit::new(2)).unwrap(), id);
        let hh = CliffordCircuit::new(2).with(CliffordGate::H(0)).unwrap().with(CliffordGate::H(0)).unwrap();
        assert_eq!(CliffordTableau::from_circuit(&hh).unwrap(), id);
    }

    #[test]
    fn conjugation_examples() {
        let mut t = CliffordTableau::identity(1);
        t.apply_h(0).unwrap();
        let img = t.conjugate(&PauliString::single(1, 0, Pauli::X), Direction::Forward).unwrap();
        assert_eq!((img.get(0), img.phase()), (Pauli::Z, 0));
        // S Y S† = -X
        let mut t = CliffordTableau::identity(1);
        t.apply_s(0).unwrap();
        let img = t.conjugate(&PauliString::single(1, 0, Pauli::Y), Direction::Forward).unwrap();
        assert_eq!((img.get(0), img.phase()), (Pauli::X, 2));
        let back = t.conjugate(&img, Direction::Backward).unwrap();
        assert_eq!((back.get(0), back.phase()), (Pauli::Y, 0));
    }

    #[test]
    fn invariants_hold_after_every_gate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = random_circuit(5, 200, &mut rng);
        let mut t = CliffordTableau::identity(5);
        for &g in c.gates() {
            t.apply(g).unwrap();
            assert!(t.is_valid());
        }
    }

    #[test]
    fn dimension_and_range_errors() {
        let t = CliffordTableau::identity(2);
        assert!(t.conjugate(&PauliString::identity(3), Direction::Forward).is_err());
        let mut t = CliffordTableau::identity(2);
        assert!(t.apply_h(2).is_err());
        assert!(t.apply_cnot(0, 0).is_err());
    }

    #[test]
    fn from_rows_validates() {
        let t = CliffordTableau::identity(2);
        assert!(CliffordTableau::from_rows(2, t.rows().to_vec()).is_ok());
        let mut bad = t.rows().to_vec();
        bad.swap(0, 1);
        bad[0] = bad[2].clone();
        assert!(CliffordTableau::from_rows(2, bad).is_err());
    }

    #[test]
    fn deterministic_zero_state_samples_zero() {
        let t = CliffordTableau::identity(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            assert_eq!(t.sample(&mut rng).to_string(), "00");
        }
    }

    #[test]
    fn unitary_matches_circuit_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let c = random_circuit(n, 40, &mut rng);
            let t = CliffordTableau::from_circuit(&c).unwrap();
            let dense = c.to_matrix().unwrap();
            let from_tab = t.to_unitary(DEFAULT_DENSE_CAP).unwrap();
            assert!(equal_up_to_phase(&dense, &from_tab, 1e-10));
        }
    }

    #[test]
    fn apply_to_state_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = random_circuit(3, 40, &mut rng);
        let t = CliffordTableau::from_circuit(&c).unwrap();
        let psi = Statevector::product_state(3, &gates::rx(0.7).dot(&gates::rz(1.1)), 16).unwrap();
        let mut dense = psi.clone();
        c.apply_to(&mut dense).unwrap();
        let via_tab = t.apply_to_state(&psi, 16).unwrap();
        let overlap = dense.inner(&via_tab).norm();
        assert!((overlap - 1.0).abs() < 1e-10);
    }
}
