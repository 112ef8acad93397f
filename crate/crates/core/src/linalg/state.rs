use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::LinalgError;

/// Default largest qubit count for dense simulation.
pub const DEFAULT_DENSE_CAP: usize = 16;

/// Dense `2^n` amplitude vector. Qubit 0 is the most significant bit of the
/// basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0^n>` under the default dense cap.
    pub fn zero(n: usize) -> Result<Self, LinalgError> {
        Self::zero_with_cap(n, DEFAULT_DENSE_CAP)
    }

    pub fn zero_with_cap(n: usize, cap: usize) -> Result<Self, LinalgError> {
        Self::basis_with_cap(n, 0, cap)
    }

    /// Computational basis state `|index>`.
    pub fn basis_with_cap(n: usize, index: usize, cap: usize) -> Result<Self, LinalgError> {
        if n > cap {
            return Err(LinalgError::DenseCapExceeded { n, cap });
        }
        let mut amps = vec![Complex64::zero(); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        if amps.len() != 1 << n {
            return Err(LinalgError::BadShape { rows: 1 << n, cols: 1, len: amps.len() });
        }
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies `gate` to `targets`; `targets[0]` is the most significant
    /// tensor factor of the gate.
    pub fn apply_gate(&mut self, gate: &ComplexMatrix, targets: &[usize]) -> Result<(), LinalgError> {
        let k = targets.len();
        if !gate.is_square() || gate.rows() != 1 << k {
            return Err(LinalgError::GateArity { dim: gate.rows(), targets: k });
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n {
                return Err(LinalgError::QubitOutOfRange { qubit: t, n: self.n });
            }
            if targets[..i].contains(&t) {
                return Err(LinalgError::RepeatedTarget(t));
            }
        }
        let shifts: Vec<usize> = targets.iter().map(|&t| self.n - 1 - t).collect();
        let target_mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        let dim = 1usize << k;
        // Offsets of each gate basis state inside the full index.
        let offsets: Vec<usize> = (0..dim)
            .map(|sub| (0..k).filter(|&m| (sub >> (k - 1 - m)) & 1 == 1).map(|m| 1usize << shifts[m]).sum())
            .collect();
        let mut local = vec![Complex64::zero(); dim];
        for base in 0..self.amps.len() {
            if base & target_mask != 0 {
                continue;
            }
            for (sub, &off) in offsets.iter().enumerate() {
                local[sub] = self.amps[base | off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                let mut acc = Complex64::zero();
                for (col, &v) in local.iter().enumerate() {
                    acc += gate[(row, col)] * v;
                }
                self.amps[base | off] = acc;
            }
        }
        Ok(())
    }

    /// Applies the same single-qubit gate to every qubit.
    pub fn apply_to_all(&mut self, gate: &ComplexMatrix) -> Result<(), LinalgError> {
        for q in 0..self.n {
            self.apply_gate(gate, &[q])?;
        }
        Ok(())
    }

    /// Product state `u^{⊗n}|0^n>` built directly from the single-qubit state.
    pub fn product_state(n: usize, u: &ComplexMatrix, cap: usize) -> Result<Self, LinalgError> {
        if n > cap {
            return Err(LinalgError::DenseCapExceeded { n, cap });
        }
        if u.rows() != 2 || u.cols() != 2 {
            return Err(LinalgError::GateArity { dim: u.rows(), targets: 1 });
        }
        Self::product_of(n, [u[(0, 0)], u[(1, 0)]])
    }

    /// `|v>^{⊗n}` for a single-qubit vector `v`.
    pub fn product_of(n: usize, v: [Complex64; 2]) -> Result<Self, LinalgError> {
        let amps = (0..1usize << n)
            .map(|idx| (0..n).fold(Complex64::new(1.0, 0.0), |acc, q| acc * v[(idx >> (n - 1 - q)) & 1]))
            .collect();
        Ok(Self { n, amps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gates;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &Statevector, b: &[Complex64]) -> bool {
        a.amplitudes().iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn x_flips_zero() {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_gate(&gates::x(), &[0]).unwrap();
        assert!(close(&s, &[Complex64::zero(), Complex64::new(1.0, 0.0)]));
    }

    #[test]
    fn cnot_with_zero_control_is_identity() {
        let mut s = Statevector::zero(2).unwrap();
        s.apply_gate(&gates::cnot(), &[0, 1]).unwrap();
        assert_eq!(s.amplitudes()[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn h_makes_plus() {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_gate(&gates::h(), &[0]).unwrap();
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(&s, &[r, r]));
    }

    #[test]
    fn cnot_control_is_first_target() {
        // |10> -> |11> with control qubit 0.
        let mut s = Statevector::basis_with_cap(2, 0b10, 16).unwrap();
        s.apply_gate(&gates::cnot(), &[0, 1]).unwrap();
        assert_eq!(s.amplitudes()[0b11], Complex64::new(1.0, 0.0));
        // Reversed targets: control qubit 1, so |10> is unchanged.
        let mut s = Statevector::basis_with_cap(2, 0b10, 16).unwrap();
        s.apply_gate(&gates::cnot(), &[1, 0]).unwrap();
        assert_eq!(s.amplitudes()[0b10], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_bad_targets() {
        let mut s = Statevector::zero(2).unwrap();
        assert!(matches!(s.apply_gate(&gates::x(), &[2]), Err(LinalgError::QubitOutOfRange { .. })));
        assert!(matches!(s.apply_gate(&gates::x(), &[0, 1]), Err(LinalgError::GateArity { .. })));
        let three = ComplexMatrix::identity(3);
        assert!(s.apply_gate(&three, &[0]).is_err());
        assert!(matches!(s.apply_gate(&gates::cnot(), &[1, 1]), Err(LinalgError::RepeatedTarget(1))));
    }

    #[test]
    fn dense_cap_is_a_refusal() {
        assert!(matches!(Statevector::zero(17), Err(LinalgError::DenseCapExceeded { .. })));
        assert!(Statevector::zero_with_cap(17, 17).is_ok());
    }

    #[test]
    fn norm_is_preserved() {
        let mut s = Statevector::zero(3).unwrap();
        for (g, t) in [
            (gates::h(), alloc::vec![0]),
            (gates::rx(0.4), alloc::vec![2]),
            (gates::cnot(), alloc::vec![0, 2]),
            (gates::rz(1.3), alloc::vec![1]),
            (gates::cz(), alloc::vec![2, 1]),
        ] {
            s.apply_gate(&g, &t).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn product_state_matches_gate_application() {
        let u = gates::rx(0.7).dot(&gates::rz(0.2));
        let direct = Statevector::product_state(3, &u, 16).unwrap();
        let mut applied = Statevector::zero(3).unwrap();
        applied.apply_to_all(&u).unwrap();
        assert!(close(&direct, applied.amplitudes()));
    }
}
