//! Multi-threaded drivers whose output matches the sequential versions
//! exactly, whatever the worker count.

use std::sync::OnceLock;

use ccc_core::experiments::{AnticoncentrationReport, AnticoncentrationSetup, ExperimentError, MIN_SAMPLES};
use ccc_core::gadgets::{
    merge_hits, search_assignment, Assignment, CliffordPool, GadgetError, SearchReport, DEFAULT_SAMPLED_WORD_LENGTH,
};
use ccc_core::linalg::{is_unitary, ComplexMatrix};
use ccc_core::stabilizer::CliffordClassTable;
use ccc_core::BitString;
use rayon::prelude::*;

/// Anticoncentration trial with draws spread over the rayon pool. Each draw
/// has its own RNG stream and values are collected in draw order, so the
/// report equals the sequential one bit for bit.
pub fn anticoncentration_parallel(
    n: usize,
    u: &ComplexMatrix,
    y: &BitString,
    num_samples: usize,
    a: f64,
    seed: u64,
    cap: usize,
) -> Result<AnticoncentrationReport, ExperimentError> {
    if num_samples < MIN_SAMPLES {
        return Err(ExperimentError::TooFewSamples { got: num_samples, min: MIN_SAMPLES });
    }
    let setup = AnticoncentrationSetup::new(n, u, y, cap)?;
    let values = (0..num_samples as u64).into_par_iter().map(|i| setup.draw(seed, i)).collect::<Result<Vec<_>, _>>()?;
    AnticoncentrationReport::from_values(&setup, a, seed, values)
}

/// All 11520 two-qubit Clifford classes with their matrices, built once.
pub fn two_qubit_pool() -> Result<&'static CliffordPool, GadgetError> {
    static POOL: OnceLock<CliffordPool> = OnceLock::new();
    if let Some(p) = POOL.get() {
        return Ok(p);
    }
    let pool = CliffordPool::from_table(&CliffordClassTable::enumerate(2)?)?;
    Ok(POOL.get_or_init(|| pool))
}

/// Searches every assignment of `pool` in parallel; hits are merged by
/// canonical key, so the report does not depend on scheduling.
pub fn search_pool_parallel(pool: &CliffordPool, u: &ComplexMatrix) -> Result<SearchReport, GadgetError> {
    if u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-10) {
        return Err(GadgetError::NotUnitary);
    }
    let assignments = Assignment::all(pool.num_qubits(), 1);
    let found: Vec<_> =
        assignments.par_iter().enumerate().flat_map_iter(|(i, a)| search_assignment(pool, u, 1, a, i)).collect();
    Ok(SearchReport {
        k: pool.num_qubits(),
        exhaustive: pool.is_exhaustive(),
        cliffords_tried: pool.len(),
        candidates: pool.len() * assignments.len(),
        hits: merge_hits(found),
    })
}

/// `k = 2` searches all classes; `k = 3` searches `budget` sampled classes
/// drawn with `seed`.
pub fn search_gadgets_parallel(
    u: &ComplexMatrix,
    k: usize,
    budget: usize,
    seed: u64,
) -> Result<SearchReport, GadgetError> {
    match k {
        2 => search_pool_parallel(two_qubit_pool()?, u),
        3 => search_pool_parallel(&CliffordPool::sampled(3, budget, DEFAULT_SAMPLED_WORD_LENGTH, seed)?, u),
        _ => Err(GadgetError::SearchWidth(k)),
    }
}
