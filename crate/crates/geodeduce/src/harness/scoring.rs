//! Corpus metrics: Jaccard similarity of formalizations, choice selection,
//! completion grading, and the answer reliability rate.

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use crate::algebra::rat_i;
use crate::formal_lang::{node_key, Literal};

/// Intersection over union of two canonical literal sets. Order and
/// duplicates are irrelevant; two empty sets count as identical (1).
pub fn jaccard(predicted: &[Literal], truth: &[Literal]) -> BigRational {
    let p: BTreeSet<String> = predicted.iter().map(node_key).collect();
    let y: BTreeSet<String> = truth.iter().map(node_key).collect();
    if p.is_empty() && y.is_empty() {
        return rat_i(1);
    }
    let inter = p.intersection(&y).count() as i64;
    let union = p.union(&y).count() as i64;
    BigRational::new(rat_i(inter).numer().clone(), rat_i(union).numer().clone())
}

/// Choice grading: the option numerically closest to the solver's answer,
/// lowest index on ties; a seeded uniform pick when there is no answer.
pub fn score_choice(answer: Option<f64>, options: &[f64; 4], seed: u64) -> usize {
    match answer {
        Some(a) => {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (i, &o) in options.iter().enumerate() {
                let d = (o - a).abs();
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            best
        }
        None => StdRng::seed_from_u64(seed).gen_range(0..4),
    }
}

/// Completion grading at third-decimal granularity: within 1e-3 relative or
/// 5e-4 absolute of the ground truth. Unresolved answers are incorrect.
pub fn score_completion(answer: Option<f64>, truth: f64) -> bool {
    match answer {
        Some(a) => (a - truth).abs() <= (1e-3 * truth.abs()).max(5e-4),
        None => false,
    }
}
