//! Ambient groups, their elements, and left-cancellative operators.
//!
//! An [`Operator`] is a binary operation `⊕` together with its row inverse
//! `⊖` (`c ⊖ a = b` iff `a ⊕ b = c`). Two kinds exist: addition in a
//! [`GroupSpec`] and an explicit [`CayleyTable`].

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;
use serde_json::Value;

use crate::error::Result;

mod group;
mod scalar;
mod table;
pub mod text;

pub use group::{Element, GroupSpec, FREE_SAMPLE_RADIUS};
pub use scalar::Coord;
pub use table::{random_latin_square, CayleyTable, Label};

/// Evidence that left cancellation fails: `a ⊕ b1 = a ⊕ b2` with `b1 != b2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationWitness<I> {
    pub a: I,
    pub b1: I,
    pub b2: I,
}

/// A binary operation `⊕` on a common carrier, with row inverse `⊖`.
pub trait Operator: Sync {
    type Item: Clone + Ord + Hash + Debug + Send + Sync;

    /// `a ⊕ b`.
    fn apply(&self, a: &Self::Item, b: &Self::Item) -> Result<Self::Item>;

    /// The unique `b` with `a ⊕ b = c`, or `None` when `c` is not in row `a`.
    fn unapply(&self, c: &Self::Item, a: &Self::Item) -> Result<Option<Self::Item>>;

    fn check_item(&self, x: &Self::Item) -> Result<()>;

    /// `Ok` iff every row of the operation is injective.
    fn validate_left_cancellation(&self) -> Result<(), CancellationWitness<Self::Item>>;

    /// Every element in canonical order, when the carrier is finite.
    fn carrier(&self) -> Option<Vec<Self::Item>>;

    /// Group identity; tables have none.
    fn identity(&self) -> Option<Self::Item>;

    fn sample_item(&self, rng: &mut dyn RngCore) -> Self::Item;

    fn parse_item(&self, text: &str) -> Result<Self::Item>;

    fn format_item(&self, x: &Self::Item) -> String;

    fn item_to_json(&self, x: &Self::Item) -> Value;

    fn item_from_json(&self, v: &Value) -> Result<Self::Item>;

    /// Short human-readable name, e.g. `Z13`.
    fn describe(&self) -> String;

    fn carrier_size(&self) -> Option<usize> {
        self.carrier().map(|c| c.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_group() -> impl Strategy<Value = GroupSpec<i64>> {
        prop::collection::vec(1i64..=6, 1..=3)
            .prop_filter("order <= 64", |m| m.iter().product::<i64>() <= 64)
            .prop_map(|m| GroupSpec::new(m).unwrap())
    }

    proptest! {
        #[test]
        fn group_rows_are_injective_and_invertible(g in small_group()) {
            let els = g.elements().unwrap();
            for a in &els {
                let mut row: Vec<_> = els.iter().map(|b| g.apply(a, b).unwrap()).collect();
                for (b, c) in els.iter().zip(&row) {
                    prop_assert!(g.check(c).is_ok());
                    prop_assert_eq!(g.unapply(c, a).unwrap(), Some(b.clone()));
                }
                row.sort();
                row.dedup();
                prop_assert_eq!(row.len(), els.len());
            }
        }

        #[test]
        fn table_validation_matches_row_injectivity(
            rows in prop::collection::vec(prop::collection::vec(0usize..4, 4), 4)
        ) {
            let t = CayleyTable::from_indices(rows.clone()).unwrap();
            let injective = rows.iter().all(|r| {
                let mut s = r.clone();
                s.sort();
                s.dedup();
                s.len() == r.len()
            });
            match t.validate_left_cancellation() {
                Ok(()) => prop_assert!(injective),
                Err(w) => {
                    prop_assert!(!injective);
                    prop_assert!(w.b1 != w.b2);
                    prop_assert_eq!(t.get(w.a, w.b1), t.get(w.a, w.b2));
                }
            }
        }
    }
}
