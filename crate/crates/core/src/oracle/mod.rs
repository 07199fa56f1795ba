//! Brute-force ground truth.
//!
//! The census enumerates every matching of a pair and groups them by
//! multiplicity function; augmenting paths decide existence independently.
//! Sweeps run both over whole families of pairs to check the classification
//! results for small groups.

mod bipartite;
mod census;
mod pair_table;
mod report;
mod sample;
mod sweep;

pub use bipartite::{exists_matching, MatchingExistence};
pub use census::{
    census, class_size, enumerate_bijections, enumerate_matchings, is_acyclic,
    is_unique_among_bijections, CensusClass, MatchingCensus, Scope, DEFAULT_CENSUS_BOUND,
};
pub use report::{
    Evidence, SearchKind, SearchReport, SearchScope, SearchStats, SweepMode, Verdict, Witness,
};
pub use sample::{sample_pair, sample_weak_pair};
pub use sweep::{
    is_prime, reverify_witness, verify_acyclic_property, verify_greedy_uniqueness,
    verify_matching_property, verify_theorem_identity_map, verify_theorem_sidon,
    verify_weak_acyclic_everywhere, SweepConfig,
};
