//! Seeded random pairs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::algebra::Operator;
use crate::matching::{weak_condition, SetPair};

fn distinct<O: Operator>(op: &O, k: usize, rng: &mut dyn RngCore) -> Option<BTreeSet<O::Item>> {
    match op.carrier() {
        Some(c) if c.len() < k => None,
        Some(c) => Some(c.choose_multiple(rng, k).cloned().collect()),
        None => {
            let mut out = BTreeSet::new();
            for _ in 0..1000 * k {
                if out.len() == k {
                    break;
                }
                out.insert(op.sample_item(rng));
            }
            (out.len() == k).then_some(out)
        }
    }
}

/// A uniformly sized pair of random `k`-sets; `None` if the carrier is too small.
pub fn sample_pair<O: Operator>(
    op: &O,
    k: usize,
    rng: &mut dyn RngCore,
) -> Option<SetPair<O::Item>> {
    let a = distinct(op, k, rng)?;
    let b = distinct(op, k, rng)?;
    SetPair::new(a, b).ok()
}

/// Rejection-samples a pair satisfying `A ∩ (A ⊕ B) = ∅` with `1 ≤ |A| ≤ max_size`.
pub fn sample_weak_pair<O: Operator>(
    op: &O,
    max_size: usize,
    rng: &mut dyn RngCore,
    attempts: usize,
) -> Option<SetPair<O::Item>> {
    if max_size == 0 {
        return None;
    }
    for _ in 0..attempts {
        let k = rng.gen_range(1..=max_size);
        let Some(p) = sample_pair(op, k, rng) else {
            continue;
        };
        if weak_condition(&p, op).unwrap_or(false) {
            return Some(p);
        }
    }
    None
}
