//! Matching existence as perfect bipartite matching.
//!
//! Left vertices are `A`, right vertices `B`, with an edge `a — b` iff
//! `a ⊕ b ∉ A`. Augmenting paths find a maximum matching; when it is not
//! perfect, the vertices reachable by alternating paths from an exposed left
//! vertex form a set violating Hall's condition.

use std::collections::BTreeSet;

use super::pair_table::PairTable;
use crate::algebra::Operator;
use crate::error::Result;
use crate::matching::{Matching, SetPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingExistence<I> {
    Matched(Matching<I>),
    /// `|neighbors| < |deficient|`, where `neighbors` is every `b` adjacent to some `a ∈ deficient`.
    HallViolator {
        deficient: BTreeSet<I>,
        neighbors: BTreeSet<I>,
    },
}

impl<I> MatchingExistence<I> {
    pub fn exists(&self) -> bool {
        matches!(self, MatchingExistence::Matched(_))
    }
}

const FREE: usize = usize::MAX;

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    left_of: &mut [usize],
    right_of: &mut [usize],
) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if right_of[v] == FREE || augment(right_of[v], adj, seen, left_of, right_of) {
            right_of[v] = u;
            left_of[u] = v;
            return true;
        }
    }
    false
}

/// Maximum matching; `left_of[u]` is the right partner of `u` or `FREE`.
fn max_matching(adj: &[Vec<usize>], right_n: usize) -> Vec<usize> {
    let mut left_of = vec![FREE; adj.len()];
    let mut right_of = vec![FREE; right_n];
    for u in 0..adj.len() {
        let mut seen = vec![false; right_n];
        augment(u, adj, &mut seen, &mut left_of, &mut right_of);
    }
    left_of
}

fn adjacency<I>(t: &PairTable<I>) -> Vec<Vec<usize>> {
    let k = t.k();
    (0..k)
        .map(|i| (0..k).filter(|&j| !t.blocked[i * k + j]).collect())
        .collect()
}

/// Left and right vertices reachable by alternating paths from exposed left vertices.
fn hall_sets(adj: &[Vec<usize>], left_of: &[usize], right_n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut right_of = vec![FREE; right_n];
    for (u, &v) in left_of.iter().enumerate() {
        if v != FREE {
            right_of[v] = u;
        }
    }
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; right_n];
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&u| left_of[u] == FREE).collect();
    for &u in &stack {
        left_seen[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !right_seen[v] {
                right_seen[v] = true;
                let w = right_of[v];
                if w != FREE && !left_seen[w] {
                    left_seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let pick = |s: &[bool]| s.iter().enumerate().filter(|x| *x.1).map(|x| x.0).collect();
    (pick(&left_seen), pick(&right_seen))
}

pub(crate) fn raw_exists<I>(t: &PairTable<I>) -> bool {
    let adj = adjacency(t);
    max_matching(&adj, t.k()).iter().all(|&v| v != FREE)
}

pub fn exists_matching<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<MatchingExistence<O::Item>> {
    let t = PairTable::build(pair, op)?;
    let adj = adjacency(&t);
    let left_of = max_matching(&adj, t.k());
    if left_of.iter().all(|&v| v != FREE) {
        let perm: Vec<u8> = left_of.iter().map(|&v| v as u8).collect();
        return Ok(MatchingExistence::Matched(t.matching_of(&perm)));
    }
    let (left, right) = hall_sets(&adj, &left_of, t.k());
    Ok(MatchingExistence::HallViolator {
        deficient: left.into_iter().map(|i| t.a[i].clone()).collect(),
        neighbors: right.into_iter().map(|j| t.b[j].clone()).collect(),
    })
}
