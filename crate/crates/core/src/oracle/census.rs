//! Exhaustive enumeration of matchings (or all bijections) grouped by
//! multiplicity function.

use std::collections::BTreeMap;

use super::pair_table::{sparse, PairTable};
use crate::algebra::Operator;
use crate::error::{Error, Result};
use crate::matching::{is_matching, Matching, MultiplicityFunction, SetPair};

/// Largest `|A|` enumerated by default.
pub const DEFAULT_CENSUS_BOUND: usize = 8;

/// Which bijections the census ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Bijections with `a ⊕ f(a) ∉ A` throughout.
    Matchings,
    Bijections,
}

/// All members of one multiplicity class, as permutations.
pub(crate) struct RawCensus {
    pub classes: BTreeMap<Vec<(u16, u8)>, Vec<Vec<u8>>>,
    pub total: usize,
}

impl RawCensus {
    pub fn class_size(&self, key: &[(u16, u8)]) -> usize {
        self.classes.get(key).map_or(0, Vec::len)
    }

    pub fn has_singleton(&self) -> bool {
        self.classes.values().any(|c| c.len() == 1)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.values().map(Vec::len).collect()
    }
}

struct Walk<'a, I> {
    t: &'a PairTable<I>,
    restrict: bool,
    used: Vec<bool>,
    perm: Vec<u8>,
    counts: Vec<u8>,
    out: RawCensus,
}

impl<I> Walk<'_, I> {
    fn go(&mut self, i: usize) {
        let k = self.used.len();
        if i == k {
            self.out
                .classes
                .entry(sparse(&self.counts))
                .or_default()
                .push(self.perm.clone());
            self.out.total += 1;
            return;
        }
        for j in 0..k {
            if self.used[j] || (self.restrict && self.t.blocked[i * k + j]) {
                continue;
            }
            let v = self.t.sum[i * k + j] as usize;
            self.used[j] = true;
            self.perm[i] = j as u8;
            self.counts[v] += 1;
            self.go(i + 1);
            self.counts[v] -= 1;
            self.used[j] = false;
        }
    }
}

/// Backtracking over `A` in canonical order; blocked assignments are pruned on the spot.
pub(crate) fn raw_census<I>(t: &PairTable<I>, scope: Scope) -> RawCensus {
    let k = t.a.len();
    let mut walk = Walk {
        t,
        restrict: scope == Scope::Matchings,
        used: vec![false; k],
        perm: vec![0; k],
        counts: vec![0; t.values.len()],
        out: RawCensus {
            classes: BTreeMap::new(),
            total: 0,
        },
    };
    walk.go(0);
    walk.out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass<I> {
    pub multiplicity: MultiplicityFunction<I>,
    pub matchings: Vec<Matching<I>>,
}

/// Partition of all matchings (or bijections) of a pair by multiplicity function.
///
/// Classes are ordered by multiplicity function; a matching is acyclic iff
/// its class is a singleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCensus<I> {
    pub classes: Vec<CensusClass<I>>,
}

impl<I: Clone + Ord> MatchingCensus<I> {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.matchings.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, f: &Matching<I>) -> Option<&CensusClass<I>> {
        self.classes.iter().find(|c| c.matchings.contains(f))
    }

    /// Members of singleton classes.
    pub fn acyclic(&self) -> impl Iterator<Item = &Matching<I>> {
        self.classes
            .iter()
            .filter(|c| c.matchings.len() == 1)
            .map(|c| &c.matchings[0])
    }
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::SizeBoundExceeded { size, bound })
    } else {
        Ok(())
    }
}

pub fn census<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
    scope: Scope,
    bound: usize,
) -> Result<MatchingCensus<O::Item>> {
    check_bound(pair.len(), bound)?;
    let t = PairTable::build(pair, op)?;
    let raw = raw_census(&t, scope);
    let classes = raw
        .classes
        .iter()
        .map(|(key, perms)| CensusClass {
            multiplicity: MultiplicityFunction::from_counts(
                key.iter()
                    .map(|&(v, c)| (t.values[v as usize].clone(), c as usize)),
            ),
            matchings: perms.iter().map(|p| t.matching_of(p)).collect(),
        })
        .collect();
    Ok(MatchingCensus { classes })
}

pub fn enumerate_matchings<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<MatchingCensus<O::Item>> {
    census(pair, op, Scope::Matchings, DEFAULT_CENSUS_BOUND)
}

pub fn enumerate_bijections<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<MatchingCensus<O::Item>> {
    census(pair, op, Scope::Bijections, DEFAULT_CENSUS_BOUND)
}

/// Size of `f`'s multiplicity class within the given scope.
pub fn class_size<O: Operator>(
    f: &Matching<O::Item>,
    pair: &SetPair<O::Item>,
    op: &O,
    scope: Scope,
    bound: usize,
) -> Result<usize> {
    check_bound(pair.len(), bound)?;
    let t = PairTable::build(pair, op)?;
    let perm = t
        .perm_of(f)
        .ok_or_else(|| Error::NotABijection("matching does not belong to this pair".into()))?;
    Ok(raw_census(&t, scope).class_size(&t.key_of(&perm)))
}

/// True iff no other matching shares `f`'s multiplicity function.
pub fn is_acyclic<O: Operator>(
    f: &Matching<O::Item>,
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<bool> {
    if let Some((a, b)) = crate::matching::matching_violation(f, pair, op)? {
        return Err(Error::NotAMatching {
            a: op.format_item(&a),
            b: op.format_item(&b),
        });
    }
    debug_assert!(is_matching(f, pair, op)?);
    Ok(class_size(f, pair, op, Scope::Matchings, DEFAULT_CENSUS_BOUND)? == 1)
}

/// True iff no other bijection `A -> B` shares `f`'s multiplicity function.
pub fn is_unique_among_bijections<O: Operator>(
    f: &Matching<O::Item>,
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<bool> {
    Ok(class_size(f, pair, op, Scope::Bijections, DEFAULT_CENSUS_BOUND)? == 1)
}
