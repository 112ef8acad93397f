//! Bounded word search over a gate set without inverses.
//!
//! Level `L` extends every surviving word of level `L − 1` by each
//! generator, drops duplicates (equal up to phase), and keeps the
//! `beam_width` words nearest the target. This is a desk-scale
//! demonstration of density, not an approximation guarantee.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::Serialize;

use crate::linalg::{is_unitary, phase_invariant_distance, ComplexMatrix};

use super::GadgetError;

pub const DEFAULT_BEAM_WIDTH: usize = 5000;
pub const MAX_WORD_LENGTH: usize = 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompiledWord {
    /// Generator indices; the word `[g1, …, gL]` is the product `g1·…·gL`.
    pub word: Vec<usize>,
    pub distance: f64,
    /// Best distance using words of length at most `i + 1`.
    pub best_by_length: Vec<f64>,
}

fn phase_key(m: &ComplexMatrix) -> Vec<(i64, i64)> {
    let max = m.max_abs();
    let pivot = m.entries().iter().copied().find(|z| z.norm() >= max - 1e-7).expect("unitary");
    let phase = pivot / pivot.norm();
    m.entries()
        .iter()
        .map(|z| {
            let w = z / phase;
            ((w.re * 1e9).round() as i64, (w.im * 1e9).round() as i64)
        })
        .collect()
}

/// A word, its product and its distance to the target.
type Candidate = (Vec<usize>, ComplexMatrix, f64);

/// Finds the word of length `1..=max_length` closest to `target` in
/// phase-invariant operator distance.
pub fn compile_word(
    target: &ComplexMatrix,
    generators: &[ComplexMatrix],
    max_length: usize,
    beam_width: usize,
) -> Result<CompiledWord, GadgetError> {
    if generators.is_empty() {
        return Err(GadgetError::NoGenerators);
    }
    if max_length > MAX_WORD_LENGTH {
        return Err(GadgetError::WordTooLong(max_length));
    }
    if generators.iter().chain(core::iter::once(target)).any(|g| g.rows() != 2 || !is_unitary(g, 1e-8)) {
        return Err(GadgetError::NotUnitary);
    }
    let beam_width = beam_width.max(1);
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut best_by_length = Vec::with_capacity(max_length);
    let mut level: Vec<Candidate> = Vec::new();
    for len in 1..=max_length {
        let mut next: BTreeMap<Vec<(i64, i64)>, Candidate> = BTreeMap::new();
        let parents: Vec<(Vec<usize>, ComplexMatrix)> = if len == 1 {
            alloc::vec![(Vec::new(), ComplexMatrix::identity(2))]
        } else {
            level.iter().map(|(w, m, _)| (w.clone(), m.clone())).collect()
        };
        for (word, m) in &parents {
            for (gi, g) in generators.iter().enumerate() {
                let product = m.dot(g);
                let key = phase_key(&product);
                if next.contains_key(&key) {
                    continue;
                }
                let d = phase_invariant_distance(target, &product)?;
                let mut w = word.clone();
                w.push(gi);
                next.insert(key, (w, product, d));
            }
        }
        let mut candidates: Vec<_> = next.into_values().collect();
        candidates.sort_by(|a, b| a.2.total_cmp(&b.2).then_with(|| a.0.cmp(&b.0)));
        candidates.truncate(beam_width);
        if let Some((w, _, d)) = candidates.first() {
            if best.as_ref().is_none_or(|(_, bd)| *d < *bd) {
                best = Some((w.clone(), *d));
            }
        }
        best_by_length.push(best.as_ref().map_or(f64::INFINITY, |b| b.1));
        level = candidates;
    }
    let (word, distance) = best.unwrap_or((Vec::new(), phase_invariant_distance(target, &ComplexMatrix::identity(2))?));
    Ok(CompiledWord { word, distance, best_by_length })
}
