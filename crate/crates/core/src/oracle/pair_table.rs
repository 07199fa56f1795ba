use crate::algebra::Operator;
use crate::error::Result;
use crate::matching::{Matching, SetPair};

/// Precomputed `a_i ⊕ b_j` for one pair, as indices into the sorted image.
pub(crate) struct PairTable<I> {
    pub a: Vec<I>,
    pub b: Vec<I>,
    pub values: Vec<I>,
    /// `sum[i * k + j]` indexes `values`.
    pub sum: Vec<u16>,
    /// `blocked[i * k + j]` iff `a_i ⊕ b_j ∈ A`.
    pub blocked: Vec<bool>,
}

impl<I> PairTable<I> {
    pub fn k(&self) -> usize {
        self.a.len()
    }
}

impl<I: Clone + Ord> PairTable<I> {
    pub fn build<O: Operator<Item = I>>(pair: &SetPair<I>, op: &O) -> Result<Self> {
        let a: Vec<I> = pair.a().iter().cloned().collect();
        let b: Vec<I> = pair.b().iter().cloned().collect();
        let k = a.len();
        let mut raw = Vec::with_capacity(k * k);
        for x in &a {
            for y in &b {
                raw.push(op.apply(x, y)?);
            }
        }
        let mut values = raw.clone();
        values.sort();
        values.dedup();
        let sum = raw
            .iter()
            .map(|v| values.binary_search(v).map(|i| i as u16).unwrap_or(u16::MAX))
            .collect();
        let blocked = raw.iter().map(|v| pair.a().contains(v)).collect();
        Ok(PairTable {
            a,
            b,
            values,
            sum,
            blocked,
        })
    }

    /// `perm[i]` is the index in `b` assigned to `a_i`.
    pub fn perm_of(&self, f: &Matching<I>) -> Option<Vec<u8>> {
        self.a
            .iter()
            .map(|x| {
                let y = f.get(x)?;
                self.b.binary_search(y).ok().map(|j| j as u8)
            })
            .collect()
    }

    pub fn matching_of(&self, perm: &[u8]) -> Matching<I> {
        Matching::from_map(
            self.a
                .iter()
                .cloned()
                .zip(perm.iter().map(|&j| self.b[j as usize].clone()))
                .collect(),
        )
    }

    /// Sparse multiplicity key of a permutation: `(value index, count)` ascending.
    pub fn key_of(&self, perm: &[u8]) -> Vec<(u16, u8)> {
        let k = self.k();
        let mut counts = vec![0u8; self.values.len()];
        for (i, &j) in perm.iter().enumerate() {
            counts[self.sum[i * k + j as usize] as usize] += 1;
        }
        sparse(&counts)
    }
}

pub(crate) fn sparse(counts: &[u8]) -> Vec<(u16, u8)> {
    counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(i, &c)| (i as u16, c))
        .collect()
}
