use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitString;
use crate::linalg::{ComplexMatrix, LinalgError};
use crate::stabilizer::{random_circuit, CliffordCircuit, CliffordClassTable, CliffordTableau};

use super::{contract, ActionClass, Gadget, GadgetAction, GadgetError};

/// Distinct 3-qubit Cliffords drawn when the group is too large to list.
pub const DEFAULT_SAMPLED_BUDGET: usize = 2000;
/// Length of the random generator words used for sampling.
pub const DEFAULT_SAMPLED_WORD_LENGTH: usize = 60;

const ZERO_ACTION: f64 = 1e-9;
const KEY_GRID: f64 = 1e6;

/// Clifford parts to try, each with its dense matrix.
#[derive(Clone, Debug)]
pub struct CliffordPool {
    k: usize,
    entries: Vec<(CliffordCircuit, ComplexMatrix)>,
    exhaustive: bool,
}

impl CliffordPool {
    /// Every class of an enumerated table.
    pub fn from_table(table: &CliffordClassTable) -> Result<Self, LinalgError> {
        let entries = table
            .classes()
            .iter()
            .map(|(_, word)| Ok((word.clone(), word.to_matrix()?)))
            .collect::<Result<Vec<_>, LinalgError>>()?;
        Ok(Self { k: table.num_qubits(), entries, exhaustive: true })
    }

    /// Up to `budget` distinct classes reached by seeded random words.
    pub fn sampled(k: usize, budget: usize, word_length: usize, seed: u64) -> Result<Self, LinalgError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        let mut attempts = 0;
        while entries.len() < budget && attempts < budget * 20 {
            attempts += 1;
            let word = random_circuit(k, word_length, &mut rng);
            let tab = CliffordTableau::from_circuit(&word).expect("valid word");
            if seen.insert(tab) {
                let m = word.to_matrix()?;
                entries.push((word, m));
            }
        }
        Ok(Self { k, entries, exhaustive: false })
    }

    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }
}

/// Ancilla bits, postselected wires and postselection bits of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub ancilla: BitString,
    pub postselect: Vec<usize>,
    pub bits: BitString,
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    (0..1usize << k)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..k).filter(|w| (m >> (k - 1 - w)) & 1 == 1).collect())
        .collect()
}

impl Assignment {
    /// All assignments for a `k`-to-`l` gadget, in a fixed order.
    pub fn all(k: usize, l: usize) -> Vec<Assignment> {
        let m = k - l;
        let mut out = Vec::new();
        for a in 0..1usize << m {
            for s in subsets(k, m) {
                for b in 0..1usize << m {
                    out.push(Assignment {
                        ancilla: BitString::from_index(a, m),
                        postselect: s.clone(),
                        bits: BitString::from_index(b, m),
                    });
                }
            }
        }
        out
    }
}

/// A unitary non-Clifford gadget found by the search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub gadget: Gadget,
    pub action: GadgetAction,
    pub normalized: ComplexMatrix,
    pub postselects_system_wire: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub k: usize,
    pub exhaustive: bool,
    pub cliffords_tried: usize,
    pub candidates: usize,
    pub hits: Vec<SearchHit>,
}

pub type ActionKey = Vec<(i64, i64)>;

/// Phase- and scale-free fingerprint of an action.
fn canonical_key(m: &ComplexMatrix) -> ActionKey {
    let max = m.max_abs();
    let pivot = m.entries().iter().copied().find(|z| z.norm() >= max - 1e-6).expect("nonzero");
    m.entries()
        .iter()
        .map(|z| {
            let w = z / pivot;
            ((w.re * KEY_GRID).round() as i64, (w.im * KEY_GRID).round() as i64)
        })
        .collect()
}

/// Candidates for one assignment: `(enumeration order, key, hit)`.
pub fn search_assignment(
    pool: &CliffordPool,
    u: &ComplexMatrix,
    l: usize,
    assignment: &Assignment,
    assignment_index: usize,
) -> Vec<(u64, ActionKey, SearchHit)> {
    let k = pool.k;
    let mut out = Vec::new();
    for (ci, (word, gamma)) in pool.entries.iter().enumerate() {
        let a =
            contract(gamma, u, l, k, assignment.ancilla.as_slice(), &assignment.postselect, assignment.bits.as_slice());
        if a.max_abs() < ZERO_ACTION {
            continue;
        }
        let action = GadgetAction::from_matrix(a);
        if action.class() != ActionClass::UnitaryNonClifford {
            continue;
        }
        let normalized = match action.normalized() {
            Ok(n) => n,
            Err(_) => continue,
        };
        let gadget = Gadget {
            k,
            l,
            u: u.clone(),
            ancilla_bits: assignment.ancilla.clone(),
            gamma: word.clone(),
            postselect: assignment.postselect.clone(),
            postselect_bits: assignment.bits.clone(),
        };
        let order = (assignment_index * pool.entries.len() + ci) as u64;
        let key = canonical_key(&normalized);
        let postselects_system_wire = gadget.postselects_system_wire();
        out.push((order, key, SearchHit { gadget, action, normalized, postselects_system_wire }));
    }
    out
}

/// Deduplicates by normalized action (keeping the earliest candidate) and
/// sorts by the canonical key, so the result is independent of how the
/// work was split.
pub fn merge_hits(found: impl IntoIterator<Item = (u64, ActionKey, SearchHit)>) -> Vec<SearchHit> {
    let mut best: BTreeMap<ActionKey, (u64, SearchHit)> = BTreeMap::new();
    for (order, key, hit) in found {
        match best.get(&key) {
            Some((o, _)) if *o <= order => {}
            _ => {
                best.insert(key, (order, hit));
            }
        }
    }
    best.into_values().map(|(_, h)| h).collect()
}

fn check_u(u: &ComplexMatrix) -> Result<(), GadgetError> {
    if u.rows() != 2 || u.cols() != 2 || !crate::linalg::is_unitary(u, 1e-10) {
        return Err(GadgetError::NotUnitary);
    }
    Ok(())
}

/// Runs every assignment over a pool of Clifford parts (`l = 1`).
pub fn search_pool(pool: &CliffordPool, u: &ComplexMatrix) -> Result<SearchReport, GadgetError> {
    check_u(u)?;
    let assignments = Assignment::all(pool.k, 1);
    let found = assignments.iter().enumerate().flat_map(|(i, a)| search_assignment(pool, u, 1, a, i));
    let hits = merge_hits(found);
    Ok(SearchReport {
        k: pool.k,
        exhaustive: pool.exhaustive,
        cliffords_tried: pool.len(),
        candidates: pool.len() * assignments.len(),
        hits,
    })
}

/// Exhaustive search over an enumerated class table.
pub fn search_gadgets_with(table: &CliffordClassTable, u: &ComplexMatrix) -> Result<SearchReport, GadgetError> {
    search_pool(&CliffordPool::from_table(table)?, u)
}

/// Sampled search for widths whose Clifford group is too large to list.
pub fn search_gadgets_sampled(
    u: &ComplexMatrix,
    k: usize,
    budget: usize,
    seed: u64,
) -> Result<SearchReport, GadgetError> {
    if !(2..=3).contains(&k) {
        return Err(GadgetError::SearchWidth(k));
    }
    search_pool(&CliffordPool::sampled(k, budget, DEFAULT_SAMPLED_WORD_LENGTH, seed)?, u)
}

/// `k = 2`: all 11520 classes. `k = 3`: a seeded sample of
/// [`DEFAULT_SAMPLED_BUDGET`] classes, flagged as non-exhaustive.
pub fn search_gadgets(u: &ComplexMatrix, k: usize) -> Result<SearchReport, GadgetError> {
    match k {
        2 => search_gadgets_with(&CliffordClassTable::enumerate(2)?, u),
        3 => search_gadgets_sampled(u, 3, DEFAULT_SAMPLED_BUDGET, 0),
        _ => Err(GadgetError::SearchWidth(k)),
    }
}
