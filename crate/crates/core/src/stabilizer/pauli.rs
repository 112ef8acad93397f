use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, Statevector};

use super::StabilizerError;

/// Single-qubit Pauli label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// `i^phase · ⊗_j σ(x_j, z_j)` where `σ(1,1) = Y`.
///
/// Bits are packed 64 qubits per word; qubit `q` is bit `q % 64` of word
/// `q / 64`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self { n, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    /// A single Pauli on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(qubit, p);
        s
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut s = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Power of `i` in front of the tensor product.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    /// `true` when the overall sign is `-1` (phase power 2).
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.set_x(q, x);
        self.set_z(q, z);
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_x(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % 64);
        if v {
            self.x[q / 64] |= m
        } else {
            self.x[q / 64] &= !m
        }
    }

    #[inline]
    pub(crate) fn set_z(&mut self, q: usize, v: bool) {
        let m = 1u64 << (q % 64);
        if v {
            self.z[q / 64] |= m
        } else {
            self.z[q / 64] &= !m
        }
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.weight() == 0
    }

    /// Number of `Y` factors.
    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    /// `true` when the two strings commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.symplectic_product(other) == 0
    }

    /// Symplectic inner product `x·z' + z·x' mod 2`.
    pub fn symplectic_product(&self, other: &Self) -> u8 {
        let ones: u32 =
            (0..self.x.len()).map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones()).sum();
        (ones & 1) as u8
    }

    /// Sum over qubits of the exponent `g` with `σ_a σ_b = i^g σ_{a·b}`,
    /// computed a word at a time.
    fn product_exponent(&self, other: &Self) -> i64 {
        let mut total = 0i64;
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (px1, py1, pz1) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (px2, py2, pz2) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and the reverses give -i.
            let plus = (px1 & py2) | (py1 & pz2) | (pz1 & px2);
            let minus = (py1 & px2) | (pz1 & py2) | (px1 & pz2);
            total += plus.count_ones() as i64 - minus.count_ones() as i64;
        }
        total
    }

    /// `self · other`, with exact phase.
    pub fn mul(&self, other: &Self) -> Result<Self, StabilizerError> {
        if self.n != other.n {
            return Err(StabilizerError::DimensionMismatch { left: self.n, right: other.n });
        }
        let g = self.product_exponent(other);
        let phase = (self.phase as i64 + other.phase as i64 + g).rem_euclid(4) as u8;
        Ok(Self {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            phase,
        })
    }

    /// In-place `self ← other · self`. Sizes must match.
    pub(crate) fn left_mul_assign(&mut self, other: &Self) {
        let g = other.product_exponent(self);
        self.phase = (self.phase as i64 + other.phase as i64 + g).rem_euclid(4) as u8;
        for w in 0..self.x.len() {
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
    }

    /// Applies the operator to a dense statevector (qubit 0 is the MSB).
    pub fn apply_to(&self, state: &Statevector) -> Result<Statevector, StabilizerError> {
        let n = state.num_qubits();
        if n != self.n {
            return Err(StabilizerError::DimensionMismatch { left: self.n, right: n });
        }
        let (mut xmask, mut zmask) = (0usize, 0usize);
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x_bit(q) {
                xmask |= bit;
            }
            if self.z_bit(q) {
                zmask |= bit;
            }
        }
        let base = i_power(self.phase as u32 + self.y_count());
        let src = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
        for (idx, &a) in src.iter().enumerate() {
            let sign = if (idx & zmask).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            out[idx ^ xmask] = a * base * sign;
        }
        Ok(Statevector::from_amplitudes(n, out).expect("length preserved"))
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for col in 0..dim {
            let basis = Statevector::basis_with_cap(self.n, col, usize::MAX).expect("no cap");
            let image = self.apply_to(&basis).expect("sizes match");
            for (row, &v) in image.amplitudes().iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        m
    }

    /// Letters only, e.g. `"XIZ"`.
    pub fn label(&self) -> String {
        (0..self.n)
            .map(|q| match self.get(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            })
            .collect()
    }
}

pub(crate) fn i_power(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(|(ps, phase)| {
            let paulis: Vec<Pauli> =
                ps.into_iter().map(|p| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][p as usize]).collect();
            let mut s = PauliString::from_paulis(&paulis);
            s.set_phase(phase);
            s
        })
    }

    #[test]
    fn single_qubit_products() {
        let x = PauliString::single(1, 0, Pauli::X);
        let y = PauliString::single(1, 0, Pauli::Y);
        let z = PauliString::single(1, 0, Pauli::Z);
        let xy = x.mul(&y).unwrap();
        assert_eq!((xy.get(0), xy.phase()), (Pauli::Z, 1));
        let zy = z.mul(&y).unwrap();
        assert_eq!((zy.get(0), zy.phase()), (Pauli::X, 3));
        let xz = x.mul(&z).unwrap();
        assert_eq!((xz.get(0), xz.phase()), (Pauli::Y, 3));
    }

    #[test]
    fn wide_strings_span_words() {
        let mut a = PauliString::identity(130);
        a.set(0, Pauli::X);
        a.set(129, Pauli::Z);
        let mut b = PauliString::identity(130);
        b.set(129, Pauli::X);
        assert!(!a.commutes_with(&b));
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.get(129), Pauli::Y);
        assert_eq!(ab.phase(), 1);
    }

    #[test]
    fn mismatched_sizes_error() {
        let a = PauliString::identity(2);
        let b = PauliString::identity(3);
        assert!(a.mul(&b).is_err());
    }

    proptest! {
        #[test]
        fn product_matches_dense(a in arb_pauli(3), b in arb_pauli(3)) {
            let prod = a.mul(&b).unwrap().to_matrix();
            let dense = a.to_matrix().dot(&b.to_matrix());
            prop_assert!(prod.max_abs_diff(&dense).unwrap() < 1e-12);
        }

        #[test]
        fn squares_to_plus_minus_identity(a in arb_pauli(5)) {
            let sq = a.mul(&a).unwrap();
            prop_assert!(sq.is_identity_up_to_phase());
            prop_assert!(sq.phase() == 0 || sq.phase() == 2);
        }

        #[test]
        fn commutation_matches_dense(a in arb_pauli(3), b in arb_pauli(3)) {
            let (ma, mb) = (a.to_matrix(), b.to_matrix());
            let commute = ma.dot(&mb).max_abs_diff(&mb.dot(&ma)).unwrap() < 1e-12;
            prop_assert_eq!(commute, a.commutes_with(&b));
        }
    }
}
