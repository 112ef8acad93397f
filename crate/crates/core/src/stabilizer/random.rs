//! Uniform sampling from the Clifford group modulo phase, after the
//! Bravyi–Maslov canonical form.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods for no_std
use num_traits::Float;

use rand::Rng;

use super::pauli::PauliString;
use super::tableau::CliffordTableau;

type BitMatrix = Vec<Vec<bool>>;

fn identity(n: usize) -> BitMatrix {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

fn matmul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let (r, inner, c) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![false; c]; r];
    for i in 0..r {
        for k in 0..inner {
            if a[i][k] {
                for j in 0..c {
                    out[i][j] ^= b[k][j];
                }
            }
        }
    }
    out
}

fn transpose(a: &BitMatrix) -> BitMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Inverse of a unit lower-triangular matrix by forward substitution.
#[allow(clippy::needless_range_loop)]
fn inverse_unit_lower(l: &BitMatrix) -> BitMatrix {
    let n = l.len();
    let mut x = identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut v = false;
            for k in j..i {
                v ^= l[i][k] & x[k][j];
            }
            x[i][j] = v;
        }
    }
    x
}

#[allow(clippy::needless_range_loop)]
fn fill_lower<R: Rng + ?Sized>(m: &mut BitMatrix, symmetric: bool, rng: &mut R) {
    let n = m.len();
    for i in 0..n {
        for j in 0..i {
            let v = rng.gen::<bool>();
            m[i][j] = v;
            if symmetric {
                m[j][i] = v;
            }
        }
    }
}

fn random_diagonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = rng.gen::<bool>();
    }
    m
}

/// Quantum Mallows sample: Hadamard layer and qubit permutation.
fn sample_mallows<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Vec<bool>, Vec<usize>) {
    let mut had = vec![false; n];
    let mut perm = vec![0; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let m = n - i;
        let eps = 4f64.powi(-(m as i32));
        let r: f64 = rng.gen();
        let raw = -(r + (1.0 - r) * eps).log2().ceil();
        let index = (raw.max(0.0) as usize).min(2 * m - 1);
        had[i] = index < m;
        let k = if index < m { index } else { 2 * m - index - 1 };
        perm[i] = remaining.remove(k);
    }
    (had, perm)
}

/// `[[δ, 0], [γδ, (δ⁻¹)ᵀ]]` as a `2n × 2n` matrix.
fn layer(gamma: &BitMatrix, delta: &BitMatrix) -> BitMatrix {
    let n = delta.len();
    let prod = matmul(gamma, delta);
    let inv_t = transpose(&inverse_unit_lower(delta));
    let mut t = vec![vec![false; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            t[i][j] = delta[i][j];
            t[n + i][j] = prod[i][j];
            t[n + i][n + j] = inv_t[i][j];
        }
    }
    t
}

/// A uniformly random symplectic matrix; row `i` holds the `(x | z)` bits
/// of the image of `X_i` (`i < n`) or `Z_{i-n}`.
fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    let (had, perm) = sample_mallows(n, rng);
    let mut gamma1 = random_diagonal(n, rng);
    let mut gamma2 = random_diagonal(n, rng);
    let mut delta1 = identity(n);
    let mut delta2 = identity(n);
    fill_lower(&mut gamma1, true, rng);
    fill_lower(&mut gamma2, true, rng);
    fill_lower(&mut delta1, false, rng);
    fill_lower(&mut delta2, false, rng);

    let table1 = layer(&gamma1, &delta1);
    let table2 = layer(&gamma2, &delta2);
    let mut table: BitMatrix =
        (0..2 * n).map(|i| if i < n { table2[perm[i]].clone() } else { table2[n + perm[i - n]].clone() }).collect();
    for (i, &h) in had.iter().enumerate() {
        if h {
            table.swap(i, n + i);
        }
    }
    // Borel layer, then Hadamards and permutation, then Borel layer.
    matmul(&table1, &table)
}

/// A uniformly random `n`-qubit Clifford, modulo global phase.
pub fn random_clifford<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordTableau {
    assert!(n >= 1, "random_clifford needs at least one qubit");
    let symp = random_symplectic(n, rng);
    let rows = symp
        .iter()
        .map(|bits| {
            let mut p = PauliString::identity(n);
            for q in 0..n {
                p.set_x(q, bits[q]);
                p.set_z(q, bits[n + q]);
            }
            if rng.gen::<bool>() {
                p.set_phase(2);
            }
            p
        })
        .collect();
    CliffordTableau::from_rows(n, rows).expect("canonical form is symplectic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symplectic_part_is_uniform_on_two_qubits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = alloc::collections::BTreeMap::<BitMatrix, usize>::new();
        for _ in 0..144000 {
            *seen.entry(random_symplectic(2, &mut rng)).or_default() += 1;
        }
        let chi2: f64 = seen.values().map(|&c| (c as f64 - 200.0).powi(2) / 200.0).sum();
        // |Sp(4, F2)| = 720; the 99.9% chi-square quantile at 719 dof is about 850.
        assert_eq!(seen.len(), 720);
        assert!(chi2 < 850.0, "chi2 {chi2}");
    }

    #[test]
    fn triangular_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut l = identity(7);
        fill_lower(&mut l, false, &mut rng);
        assert_eq!(matmul(&l, &inverse_unit_lower(&l)), identity(7));
    }

    #[test]
    fn output_is_valid_for_many_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=12 {
            for _ in 0..20 {
                assert!(random_clifford(n, &mut rng).is_valid());
            }
        }
    }

    #[test]
    fn mallows_is_a_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let (_, mut perm) = sample_mallows(6, &mut rng);
            perm.sort_unstable();
            assert_eq!(perm, (0..6).collect::<Vec<_>>());
        }
    }
}
