//! Matchings, multiplicity functions and acyclic matchings between finite
//! subsets of abelian groups and, more generally, left-cancellative operators.
//!
//! The central routine is [`greedy::greedy_construct`], which builds a
//! bijection `A -> B` whose multiplicity function no other bijection shares.
//! Under `A ∩ (A + B) = ∅` that bijection is an acyclic matching. The
//! [`oracle`] module supplies exhaustive checks used to certify it.
//!
//! Group coordinates are generic over [`algebra::Coord`]; the aliases below
//! fix them to `i64`.

pub mod algebra;
pub mod error;
pub mod greedy;
pub mod matching;
pub mod oracle;

pub use error::{Error, Result};

pub type GroupSpec = algebra::GroupSpec<i64>;
pub type Element = algebra::Element<i64>;
pub type SetPair = matching::SetPair<Element>;
pub type Matching = matching::Matching<Element>;
pub type MultiplicityFunction = matching::MultiplicityFunction<Element>;
pub type GreedyTrace = greedy::GreedyTrace<Element>;
pub type MatchingCensus = oracle::MatchingCensus<Element>;
pub type Diagnosis = matching::Diagnosis<i64>;
