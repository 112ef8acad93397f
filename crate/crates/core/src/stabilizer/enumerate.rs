use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::circuit::{CliffordCircuit, Generator};
use super::tableau::CliffordTableau;
use super::StabilizerError;

/// Largest width whose Clifford group is enumerated explicitly.
pub const MAX_ENUMERATED_QUBITS: usize = 2;

/// Every `k`-qubit Clifford modulo phase, each with a shortest generator word.
///
/// Built by breadth-first closure from the identity under `H_i`, `S_i` and
/// `CNOT` in both orientations. Class counts: 24 for one qubit, 11520 for two.
#[derive(Clone, Debug)]
pub struct CliffordClassTable {
    k: usize,
    classes: Vec<(CliffordTableau, CliffordCircuit)>,
    index: BTreeMap<CliffordTableau, usize>,
}

impl CliffordClassTable {
    pub fn enumerate(k: usize) -> Result<Self, StabilizerError> {
        if k == 0 || k > MAX_ENUMERATED_QUBITS {
            return Err(StabilizerError::TooManyQubits { n: k, max: MAX_ENUMERATED_QUBITS });
        }
        let mut gens = Vec::new();
        for q in 0..k {
            gens.push(Generator::H(q));
            gens.push(Generator::S(q));
        }
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    gens.push(Generator::Cnot(a, b));
                }
            }
        }
        let start = CliffordTableau::identity(k);
        let mut index = BTreeMap::new();
        let mut classes = Vec::new();
        index.insert(start.clone(), 0);
        classes.push((start, CliffordCircuit::new(k)));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &g in &gens {
                let mut t = classes[i].0.clone();
                t.apply(g).expect("generator in range");
                if !index.contains_key(&t) {
                    let mut word = classes[i].1.clone();
                    word.push_generator(g).expect("generator in range");
                    index.insert(t.clone(), classes.len());
                    queue.push_back(classes.len());
                    classes.push((t, word));
                }
            }
        }
        Ok(Self { k, classes, index })
    }

    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[(CliffordTableau, CliffordCircuit)] {
        &self.classes
    }

    /// Position of a tableau in the table.
    pub fn index_of(&self, t: &CliffordTableau) -> Option<usize> {
        self.index.get(t).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_group_has_24_classes() {
        let t = CliffordClassTable::enumerate(1).unwrap();
        assert_eq!(t.len(), 24);
    }

    #[test]
    fn words_reproduce_their_tableaus() {
        let t = CliffordClassTable::enumerate(2).unwrap();
        assert_eq!(t.len(), 11520);
        for (tab, word) in t.classes().iter().step_by(97) {
            assert_eq!(&CliffordTableau::from_circuit(word).unwrap(), tab);
        }
    }

    #[test]
    fn refuses_three_qubits() {
        assert!(CliffordClassTable::enumerate(3).is_err());
    }
}
