//! Exhaustive and seeded-random sweeps over set pairs.
//!
//! Exhaustive sweeps visit pairs in rank order `(|A|, rank of A, rank of B)`,
//! with subsets ranked lexicographically over the canonical carrier order.
//! Work is split by `A` across threads; the minimum-rank witness wins, so
//! results do not depend on scheduling.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bipartite::{exists_matching, raw_exists, MatchingExistence};
use super::census::{class_size, raw_census, Scope, DEFAULT_CENSUS_BOUND};
use super::pair_table::PairTable;
use super::report::{
    Evidence, SearchKind, SearchReport, SearchScope, SearchStats, SweepMode, Verdict, Witness,
};
use super::sample::sample_weak_pair;
use crate::algebra::{Coord, Element, GroupSpec, Operator};
use crate::error::{Error, Result};
use crate::greedy::{construct_acyclic_matching, greedy_construct, CsOrder};
use crate::matching::{identity_premise, is_sidon, Matching, SetPair};

/// Feasibility limits for sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest carrier swept exhaustively (at most 64).
    pub max_order: usize,
    /// Largest `|A|` handed to the census.
    pub census_bound: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 16,
            census_bound: DEFAULT_CENSUS_BOUND,
        }
    }
}

/// A finite carrier with its full operation table by index.
struct Ctx<I> {
    items: Vec<I>,
    sum: Vec<usize>,
}

impl<I: Clone + Ord> Ctx<I> {
    fn build<O: Operator<Item = I>>(op: &O, cfg: &SweepConfig) -> Result<Self> {
        let items = op.carrier().ok_or_else(|| {
            Error::InfeasibleSweep(format!("{} is infinite", op.describe()))
        })?;
        let n = items.len();
        if n > cfg.max_order.min(64) {
            return Err(Error::InfeasibleSweep(format!(
                "{} has order {n} > {}",
                op.describe(),
                cfg.max_order.min(64)
            )));
        }
        let mut sum = Vec::with_capacity(n * n);
        for x in &items {
            for y in &items {
                let v = op.apply(x, y)?;
                let idx = items.binary_search(&v).map_err(|_| {
                    Error::InfeasibleSweep("operation leaves the carrier".into())
                })?;
                sum.push(idx);
            }
        }
        Ok(Ctx { items, sum })
    }

    fn feasible<O: Operator<Item = I>>(op: &O, cfg: &SweepConfig) -> bool {
        op.carrier_size().is_some_and(|n| n <= cfg.max_order.min(64))
    }

    fn index_of(&self, x: &I) -> Option<usize> {
        self.items.binary_search(x).ok()
    }
}

struct Candidate<'a, I> {
    ctx: &'a Ctx<I>,
    a: &'a [usize],
    b: &'a [usize],
    a_mask: u64,
}

impl<I: Clone + Ord> Candidate<'_, I> {
    fn weak(&self) -> bool {
        let n = self.ctx.items.len();
        self.a.iter().all(|&i| {
            self.b
                .iter()
                .all(|&j| self.a_mask & (1 << self.ctx.sum[i * n + j]) == 0)
        })
    }

    fn pair(&self) -> SetPair<I> {
        let pick = |ix: &[usize]| ix.iter().map(|&i| self.ctx.items[i].clone()).collect::<Vec<_>>();
        SetPair::new(pick(self.a), pick(self.b)).expect("equal nonempty combinations")
    }
}

#[derive(Default)]
struct PairOutcome {
    examined: bool,
    matchings: u64,
    failure: Option<Evidence>,
    disagreement: bool,
}

impl PairOutcome {
    fn examined() -> Self {
        PairOutcome {
            examined: true,
            ..Default::default()
        }
    }
}

struct Found<I> {
    rank: (usize, usize, usize),
    pair: SetPair<I>,
    evidence: Evidence,
}

fn tally<I>(
    stats: &mut SearchStats,
    found: &mut Option<Found<I>>,
    out: PairOutcome,
    rank: (usize, usize, usize),
    pair: impl FnOnce() -> SetPair<I>,
) {
    if out.examined {
        stats.pairs_examined += 1;
    }
    stats.matchings_enumerated += out.matchings;
    if out.disagreement {
        stats.oracle_disagreements += 1;
    }
    if let Some(evidence) = out.failure {
        stats.failing_pairs += 1;
        if found.as_ref().is_none_or(|f| rank < f.rank) {
            *found = Some(Found {
                rank,
                pair: pair(),
                evidence,
            });
        }
    }
}

/// Visits every pair with `|A| = |B| ≤ max_size`, `B` drawn from `b_pool`.
fn drive<I, P, F>(
    ctx: &Ctx<I>,
    max_size: usize,
    b_pool: &[usize],
    prefilter: P,
    check: F,
) -> Result<(SearchStats, Option<Found<I>>)>
where
    I: Clone + Ord + Send + Sync,
    P: Fn(&Candidate<I>) -> bool + Sync,
    F: Fn(&SetPair<I>) -> Result<PairOutcome> + Sync,
{
    let n = ctx.items.len();
    let mut units = Vec::new();
    let mut b_combos = vec![Vec::new(); max_size + 1];
    for k in 1..=max_size.min(n).min(b_pool.len()) {
        b_combos[k] = b_pool.iter().copied().combinations(k).collect();
        units.extend((0..n).combinations(k).enumerate().map(|(ai, a)| (k, ai, a)));
    }
    let partial = units
        .par_iter()
        .map(|(k, ai, a)| {
            let a_mask = a.iter().fold(0u64, |m, &i| m | (1 << i));
            let mut stats = SearchStats::default();
            let mut found = None;
            for (bi, b) in b_combos[*k].iter().enumerate() {
                let cand = Candidate { ctx, a, b, a_mask };
                if !prefilter(&cand) {
                    continue;
                }
                let pair = cand.pair();
                let out = check(&pair)?;
                tally(&mut stats, &mut found, out, (*k, *ai, bi), || pair);
            }
            Ok((stats, found))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(partial))
}

fn merge<I>(parts: Vec<(SearchStats, Option<Found<I>>)>) -> (SearchStats, Option<Found<I>>) {
    let mut stats = SearchStats::default();
    let mut best: Option<Found<I>> = None;
    for (s, f) in parts {
        stats.merge(&s);
        if let Some(f) = f {
            if best.as_ref().is_none_or(|b| f.rank < b.rank) {
                best = Some(f);
            }
        }
    }
    (stats, best)
}

/// Checks `count` seeded random pairs; rank is the draw index.
fn drive_sampled<O, F>(
    op: &O,
    max_size: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
    weak_only: bool,
    check: F,
) -> Result<(SearchStats, Option<Found<O::Item>>)>
where
    O: Operator,
    F: Fn(&SetPair<O::Item>) -> Result<PairOutcome> + Sync,
{
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let p = if weak_only {
            sample_weak_pair(op, max_size, rng, 10_000)
        } else {
            (0..100).find_map(|_| {
                let k = rand::Rng::gen_range(rng, 1..=max_size.max(1));
                super::sample::sample_pair(op, k, rng)
            })
        };
        pairs.extend(p);
    }
    let partial = pairs
        .into_par_iter()
        .enumerate()
        .map(|(i, pair)| {
            let mut stats = SearchStats::default();
            let mut found = None;
            let out = check(&pair)?;
            tally(&mut stats, &mut found, out, (0, 0, i), || pair);
            Ok((stats, found))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(partial))
}

fn witness<O: Operator>(op: &O, f: Found<O::Item>) -> Witness {
    Witness {
        group: op.describe(),
        a: f.pair.a().iter().map(|x| op.format_item(x)).collect(),
        b: f.pair.b().iter().map(|x| op.format_item(x)).collect(),
        evidence: f.evidence,
    }
}

fn render_pairs<O: Operator>(op: &O, f: &Matching<O::Item>) -> Vec<(String, String)> {
    f.pairs()
        .map(|(a, b)| (op.format_item(a), op.format_item(b)))
        .collect()
}

fn no_matching_evidence<O: Operator>(op: &O, pair: &SetPair<O::Item>) -> Result<Evidence> {
    match exists_matching(pair, op)? {
        MatchingExistence::HallViolator {
            deficient,
            neighbors,
        } => Ok(Evidence::NoMatching {
            deficient: deficient.iter().map(|x| op.format_item(x)).collect(),
            neighbors: neighbors.iter().map(|x| op.format_item(x)).collect(),
        }),
        MatchingExistence::Matched(_) => Ok(Evidence::OracleDisagreement {
            bipartite: true,
            census_nonempty: false,
        }),
    }
}

fn check_census_bound(max_size: usize, cfg: &SweepConfig) -> Result<()> {
    if max_size > cfg.census_bound {
        return Err(Error::InfeasibleSweep(format!(
            "max size {max_size} exceeds census bound {}",
            cfg.census_bound
        )));
    }
    Ok(())
}

fn finish(
    scope: SearchScope,
    stats: SearchStats,
    witness: Option<Witness>,
    seed: Option<u64>,
    bug: bool,
) -> SearchReport {
    let bug = bug || stats.oracle_disagreements > 0 || witness.as_ref().is_some_and(|w| w.evidence.is_internal());
    SearchReport {
        verdict: if witness.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::PropertyHolds
        },
        scope,
        witness,
        stats,
        seed,
        implementation_bug: bug,
    }
}

/// Indices of the carrier usable as `B` members: everything except the identity.
fn nonzero_pool<I: Clone + Ord>(ctx: &Ctx<I>, zero: Option<&I>) -> Vec<usize> {
    let z = zero.and_then(|z| ctx.index_of(z));
    (0..ctx.items.len()).filter(|&i| Some(i) != z).collect()
}

/// Does every pair with `|A| = |B| ≤ max_size` and `0 ∉ B` admit a matching?
///
/// Existence is decided by augmenting paths; where `|A|` is within the census
/// bound the census is run as well and any disagreement is recorded.
pub fn verify_matching_property<T: Coord>(
    group: &GroupSpec<T>,
    max_size: usize,
    cfg: &SweepConfig,
) -> Result<SearchReport> {
    let ctx = Ctx::build(group, cfg)?;
    let pool = nonzero_pool(&ctx, Some(&group.zero()));
    let max_size = max_size.min(pool.len());
    let (stats, found) = drive(&ctx, max_size, &pool, |_| true, |pair| {
        let t = PairTable::build(pair, group)?;
        let exists = raw_exists(&t);
        let mut out = PairOutcome::examined();
        if pair.len() <= cfg.census_bound {
            let census = raw_census(&t, Scope::Matchings);
            out.matchings = census.total as u64;
            if (census.total > 0) != exists {
                out.disagreement = true;
                out.failure = Some(Evidence::OracleDisagreement {
                    bipartite: exists,
                    census_nonempty: census.total > 0,
                });
                return Ok(out);
            }
        }
        if !exists {
            out.failure = Some(no_matching_evidence(group, pair)?);
        }
        Ok(out)
    })?;
    let scope = SearchScope {
        kind: SearchKind::Matching,
        groups: vec![group.to_string()],
        max_size,
        mode: SweepMode::Exhaustive,
        description: format!("all pairs in {group} with |A| = |B| <= {max_size} and 0 not in B"),
    };
    Ok(finish(scope, stats, found.map(|f| witness(group, f)), None, false))
}

/// Does every pair with `|A| = |B| ≤ max_size` and `0 ∉ B` admit an acyclic matching?
///
/// Pairs with no matching at all count as counterexamples, and are reported
/// with [`Evidence::NoMatching`] so they can be told apart.
pub fn verify_acyclic_property<T: Coord>(
    group: &GroupSpec<T>,
    max_size: usize,
    cfg: &SweepConfig,
) -> Result<SearchReport> {
    let ctx = Ctx::build(group, cfg)?;
    let pool = nonzero_pool(&ctx, Some(&group.zero()));
    let max_size = max_size.min(pool.len());
    check_census_bound(max_size, cfg)?;
    let (stats, found) = drive(&ctx, max_size, &pool, |_| true, |pair| {
        let t = PairTable::build(pair, group)?;
        let census = raw_census(&t, Scope::Matchings);
        let exists = raw_exists(&t);
        let mut out = PairOutcome::examined();
        out.matchings = census.total as u64;
        if (census.total > 0) != exists {
            out.disagreement = true;
            out.failure = Some(Evidence::OracleDisagreement {
                bipartite: exists,
                census_nonempty: census.total > 0,
            });
        } else if census.total == 0 {
            out.failure = Some(no_matching_evidence(group, pair)?);
        } else if !census.has_singleton() {
            out.failure = Some(Evidence::NoAcyclicMatching {
                class_sizes: census.class_sizes(),
            });
        }
        Ok(out)
    })?;
    let scope = SearchScope {
        kind: SearchKind::Acyclic,
        groups: vec![group.to_string()],
        max_size,
        mode: SweepMode::Exhaustive,
        description: format!("all pairs in {group} with |A| = |B| <= {max_size} and 0 not in B"),
    };
    Ok(finish(scope, stats, found.map(|f| witness(group, f)), None, false))
}

fn weak_check<O: Operator>(op: &O, pair: &SetPair<O::Item>) -> Result<PairOutcome> {
    let mut out = PairOutcome::examined();
    let f = match construct_acyclic_matching(pair, op) {
        Ok(f) => f,
        Err(e) => {
            out.failure = Some(Evidence::ConstructionFailed {
                error: e.to_string(),
            });
            return Ok(out);
        }
    };
    let t = PairTable::build(pair, op)?;
    let census = raw_census(&t, Scope::Matchings);
    out.matchings = census.total as u64;
    let expected: usize = (1..=pair.len()).product();
    if census.total != expected {
        out.failure = Some(Evidence::CensusSize {
            expected,
            found: census.total,
        });
        return Ok(out);
    }
    let perm = t.perm_of(&f).expect("greedy output is a bijection of the pair");
    let size = census.class_size(&t.key_of(&perm));
    if size != 1 {
        out.failure = Some(Evidence::NotAcyclic {
            matching: render_pairs(op, &f),
            class_size: size,
        });
    }
    Ok(out)
}

fn uniqueness_check<O: Operator>(
    op: &O,
    pair: &SetPair<O::Item>,
    order: CsOrder,
) -> Result<PairOutcome> {
    let mut out = PairOutcome::examined();
    let f = match greedy_construct(pair, op, order) {
        Ok((f, _)) => f,
        Err(e) => {
            out.failure = Some(Evidence::ConstructionFailed {
                error: e.to_string(),
            });
            return Ok(out);
        }
    };
    let t = PairTable::build(pair, op)?;
    let census = raw_census(&t, Scope::Bijections);
    out.matchings = census.total as u64;
    let perm = t.perm_of(&f).expect("greedy output is a bijection of the pair");
    let size = census.class_size(&t.key_of(&perm));
    if size != 1 {
        out.failure = Some(Evidence::NotUnique {
            matching: render_pairs(op, &f),
            class_size: size,
        });
    }
    Ok(out)
}

/// Runs one check over several operators, exhaustively where the carrier is
/// small enough and on `samples` seeded random pairs otherwise.
#[allow(clippy::too_many_arguments)]
fn sweep_operators<O, F>(
    ops: &[O],
    max_size: usize,
    samples: usize,
    seed: u64,
    weak_only: bool,
    cfg: &SweepConfig,
    check: F,
) -> Result<(SearchStats, Option<Witness>, SweepMode, bool)>
where
    O: Operator,
    F: Fn(&O, &SetPair<O::Item>) -> Result<PairOutcome> + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SearchStats::default();
    let mut first = None;
    let (mut any_exhaustive, mut any_sampled) = (false, false);
    for op in ops {
        let (s, found) = if Ctx::<O::Item>::feasible(op, cfg) {
            any_exhaustive = true;
            let ctx = Ctx::build(op, cfg)?;
            let pool: Vec<usize> = (0..ctx.items.len()).collect();
            let prefilter = |c: &Candidate<O::Item>| !weak_only || c.weak();
            drive(&ctx, max_size, &pool, prefilter, |p| check(op, p))?
        } else {
            any_sampled = true;
            drive_sampled(op, max_size, samples, &mut rng, weak_only, |p| check(op, p))?
        };
        stats.merge(&s);
        if first.is_none() {
            first = found.map(|f| witness(op, f));
        }
    }
    let mode = match (any_exhaustive, any_sampled) {
        (true, true) => SweepMode::Mixed,
        (false, true) => SweepMode::Sampled,
        _ => SweepMode::Exhaustive,
    };
    Ok((stats, first, mode, any_sampled))
}

/// Builds the greedy matching for every weak-condition pair and certifies
/// by census that it is acyclic.
///
/// Any counterexample contradicts a proven result and is flagged as an
/// implementation bug.
pub fn verify_weak_acyclic_everywhere<O: Operator>(
    ops: &[O],
    max_size: usize,
    samples: usize,
    seed: u64,
    cfg: &SweepConfig,
) -> Result<SearchReport> {
    check_census_bound(max_size, cfg)?;
    let (stats, found, mode, sampled) =
        sweep_operators(ops, max_size, samples, seed, true, cfg, weak_check)?;
    let groups: Vec<String> = ops.iter().map(|o| o.describe()).collect();
    let scope = SearchScope {
        kind: SearchKind::Weak,
        description: format!(
            "weak-condition pairs with |A| = |B| <= {max_size} in {}",
            groups.join(", ")
        ),
        groups,
        max_size,
        mode,
    };
    let bug = found.is_some();
    Ok(finish(scope, stats, found, sampled.then_some(seed), bug))
}

/// Checks that the greedy bijection's multiplicity function is shared by no
/// other bijection, over all pairs (no matching condition imposed).
pub fn verify_greedy_uniqueness<O: Operator>(
    ops: &[O],
    max_size: usize,
    samples: usize,
    seed: u64,
    order: CsOrder,
    cfg: &SweepConfig,
) -> Result<SearchReport> {
    check_census_bound(max_size, cfg)?;
    let (stats, found, mode, sampled) =
        sweep_operators(ops, max_size, samples, seed, false, cfg, |op, p| {
            uniqueness_check(op, p, order)
        })?;
    let groups: Vec<String> = ops.iter().map(|o| o.describe()).collect();
    let scope = SearchScope {
        kind: SearchKind::Uniqueness,
        description: format!(
            "all pairs with |A| = |B| <= {max_size} in {}, C' order {order}",
            groups.join(", ")
        ),
        groups,
        max_size,
        mode,
    };
    let bug = found
        .as_ref()
        .is_some_and(|w| !matches!(w.evidence, Evidence::ConstructionFailed { .. }));
    Ok(finish(scope, stats, found, sampled.then_some(seed), bug))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// For each `A ⊆ Z/p` with `A ∩ 2A = ∅` and `|A| = k`, `k·2^(k-1) < p`,
/// `k ≤ max_k`: is the identity map `A -> A` an acyclic matching?
pub fn verify_theorem_identity_map(p: u64, max_k: usize, cfg: &SweepConfig) -> Result<SearchReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = i64::try_from(p).map_err(|_| Error::Overflow)?;
    let group: GroupSpec<i64> = GroupSpec::cyclic(n)?;
    let qualifies = |k: usize| (k as u128) << (k - 1) < p as u128;
    let max_k = (1..=max_k).take_while(|&k| qualifies(k)).last().unwrap_or(0);
    check_census_bound(max_k, cfg)?;
    if p > 64 {
        return Err(Error::InfeasibleSweep(format!("p = {p} exceeds 64")));
    }
    let items: Vec<Element<i64>> = group.elements().expect("finite");
    let mut units = Vec::new();
    for k in 1..=max_k {
        units.extend((0..items.len()).combinations(k).enumerate().map(|(ai, a)| (k, ai, a)));
    }
    let partial = units
        .par_iter()
        .map(|(k, ai, a)| {
            let mut stats = SearchStats::default();
            let mut found = None;
            let set: BTreeSet<Element<i64>> = a.iter().map(|&i| items[i].clone()).collect();
            if identity_premise(&set, &group)? {
                let pair = SetPair::new(set.clone(), set)?;
                let id = Matching::new(pair.a().iter().map(|x| (x.clone(), x.clone())), &pair)?;
                let t = PairTable::build(&pair, &group)?;
                let census = raw_census(&t, Scope::Matchings);
                let size = t.perm_of(&id).map_or(0, |perm| census.class_size(&t.key_of(&perm)));
                let mut out = PairOutcome::examined();
                out.matchings = census.total as u64;
                if size != 1 {
                    out.failure = Some(Evidence::NotAcyclic {
                        matching: render_pairs(&group, &id),
                        class_size: size,
                    });
                }
                tally(&mut stats, &mut found, out, (*k, *ai, 0), || pair);
            }
            Ok((stats, found))
        })
        .collect::<Result<Vec<_>>>()?;
    let (stats, found) = merge(partial);
    let scope = SearchScope {
        kind: SearchKind::Identity,
        groups: vec![group.to_string()],
        max_size: max_k,
        mode: SweepMode::Exhaustive,
        description: format!(
            "A in {group} with A ∩ 2A empty, |A| = k <= {max_k}, k·2^(k-1) < {p}; identity map"
        ),
    };
    let bug = found.is_some();
    Ok(finish(scope, stats, found.map(|f| witness(&group, f)), None, bug))
}

/// Weak-condition pairs whose `B` is a Sidon set: does an acyclic matching exist?
pub fn verify_theorem_sidon<T: Coord>(
    group: &GroupSpec<T>,
    max_size: usize,
    cfg: &SweepConfig,
) -> Result<SearchReport> {
    check_census_bound(max_size, cfg)?;
    let ctx = Ctx::build(group, cfg)?;
    let pool: Vec<usize> = (0..ctx.items.len()).collect();
    let (stats, found) = drive(&ctx, max_size, &pool, |c| c.weak(), |pair| {
        if !is_sidon(pair.b(), group)? {
            return Ok(PairOutcome::default());
        }
        let t = PairTable::build(pair, group)?;
        let census = raw_census(&t, Scope::Matchings);
        let mut out = PairOutcome::examined();
        out.matchings = census.total as u64;
        if !census.has_singleton() {
            out.failure = Some(Evidence::NoAcyclicMatching {
                class_sizes: census.class_sizes(),
            });
        }
        Ok(out)
    })?;
    let scope = SearchScope {
        kind: SearchKind::Sidon,
        groups: vec![group.to_string()],
        max_size,
        mode: SweepMode::Exhaustive,
        description: format!(
            "weak-condition pairs in {group} with Sidon B and |A| = |B| <= {max_size}"
        ),
    };
    let bug = found.is_some();
    Ok(finish(scope, stats, found.map(|f| witness(group, f)), None, bug))
}

/// Recomputes a witness's evidence from scratch; `true` iff it reproduces.
pub fn reverify_witness<O: Operator>(op: &O, w: &Witness) -> Result<bool> {
    let parse = |xs: &[String]| xs.iter().map(|x| op.parse_item(x)).collect::<Result<Vec<_>>>();
    let pair = SetPair::checked(op, parse(&w.a)?, parse(&w.b)?)?;
    let parse_matching = |m: &[(String, String)]| -> Result<Matching<O::Item>> {
        let pairs = m
            .iter()
            .map(|(a, b)| Ok((op.parse_item(a)?, op.parse_item(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Matching::new(pairs, &pair)
    };
    let bound = pair.len().max(DEFAULT_CENSUS_BOUND);
    let t = PairTable::build(&pair, op)?;
    Ok(match &w.evidence {
        Evidence::NoMatching {
            deficient,
            neighbors,
        } => {
            raw_census(&t, Scope::Matchings).total == 0
                && no_matching_evidence(op, &pair)?
                    == Evidence::NoMatching {
                        deficient: deficient.clone(),
                        neighbors: neighbors.clone(),
                    }
                && neighbors.len() < deficient.len()
        }
        Evidence::NoAcyclicMatching { class_sizes } => {
            let census = raw_census(&t, Scope::Matchings);
            census.total > 0 && !census.has_singleton() && &census.class_sizes() == class_sizes
        }
        Evidence::NotAcyclic {
            matching,
            class_size: size,
        } => {
            let f = parse_matching(matching)?;
            *size != 1 && class_size(&f, &pair, op, Scope::Matchings, bound)? == *size
        }
        Evidence::NotUnique {
            matching,
            class_size: size,
        } => {
            let f = parse_matching(matching)?;
            *size != 1 && class_size(&f, &pair, op, Scope::Bijections, bound)? == *size
        }
        Evidence::CensusSize { expected, found } => {
            let total = raw_census(&t, Scope::Matchings).total;
            total == *found && total != *expected
        }
        Evidence::OracleDisagreement {
            bipartite,
            census_nonempty,
        } => {
            raw_exists(&t) == *bipartite
                && (raw_census(&t, Scope::Matchings).total > 0) == *census_nonempty
                && bipartite != census_nonempty
        }
        Evidence::ConstructionFailed { error } => greedy_construct(&pair, op, CsOrder::Ascending)
            .err()
            .is_some_and(|e| &e.to_string() == error),
    })
}
