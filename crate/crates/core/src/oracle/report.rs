use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    /// Every pair with `0 ∉ B` has a matching.
    Matching,
    /// Every pair with `0 ∉ B` has an acyclic matching.
    Acyclic,
    /// Every weak-condition pair has an acyclic matching, built greedily.
    Weak,
    /// `A ∩ 2A = ∅` and `k·2^(k-1) < p` make the identity map acyclic.
    Identity,
    /// Weak-condition pairs with Sidon `B` have an acyclic matching.
    Sidon,
    /// The greedy bijection's multiplicity function is unique among all bijections.
    Uniqueness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchScope {
    pub kind: SearchKind,
    pub groups: Vec<String>,
    pub max_size: usize,
    pub mode: SweepMode,
    pub description: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PropertyHolds,
    Counterexample,
}

/// What was found wrong with a witness pair. Elements are text literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Empty census; `deficient ⊆ A` has fewer admissible partners (`neighbors`) than members.
    NoMatching {
        deficient: Vec<String>,
        neighbors: Vec<String>,
    },
    /// Matchings exist but every multiplicity class has at least two members.
    NoAcyclicMatching { class_sizes: Vec<usize> },
    /// A specific bijection (identity map, greedy output) shares its class.
    NotAcyclic {
        matching: Vec<(String, String)>,
        class_size: usize,
    },
    /// The greedy bijection shares its multiplicity function with other bijections.
    NotUnique {
        matching: Vec<(String, String)>,
        class_size: usize,
    },
    /// Weak-condition pair whose census is not all `|A|!` bijections.
    CensusSize { expected: usize, found: usize },
    /// Augmenting-path existence and census nonemptiness disagree.
    OracleDisagreement {
        bipartite: bool,
        census_nonempty: bool,
    },
    ConstructionFailed { error: String },
}

impl Evidence {
    /// Evidence that can only arise from a defect in this library.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Evidence::CensusSize { .. } | Evidence::OracleDisagreement { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: String,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Pairs that met the sweep's premise and were checked.
    pub pairs_examined: u64,
    pub matchings_enumerated: u64,
    pub failing_pairs: u64,
    pub oracle_disagreements: u64,
}

impl SearchStats {
    pub(crate) fn merge(&mut self, other: &SearchStats) {
        self.pairs_examined += other.pairs_examined;
        self.matchings_enumerated += other.matchings_enumerated;
        self.failing_pairs += other.failing_pairs;
        self.oracle_disagreements += other.oracle_disagreements;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub scope: SearchScope,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Set when the outcome contradicts a proven statement or the oracles disagree.
    pub implementation_bug: bool,
}

impl SearchReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::PropertyHolds
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}
