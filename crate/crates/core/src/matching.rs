//! Set pairs, matchings, multiplicity functions and the predicates on them.
//!
//! A matching from `A` to `B` is a bijection `f` with `a ⊕ f(a) ∉ A` for
//! every `a`. Its multiplicity function counts, for each value `x`, how many
//! `a` have `a ⊕ f(a) = x`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::{Map, Value};

use crate::algebra::{Coord, Element, GroupSpec, Operator};
use crate::error::{Error, Result};

/// Two nonempty, equal-size finite sets `A` and `B`.
///
/// Whether `0 ∉ B` or the weak condition holds is deliberately not enforced;
/// searches need to build pairs that fail both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPair<I> {
    a: BTreeSet<I>,
    b: BTreeSet<I>,
}

impl<I: Clone + Ord> SetPair<I> {
    /// Deduplicates and orders both sides, then checks they are nonempty and equal in size.
    pub fn new(a: impl IntoIterator<Item = I>, b: impl IntoIterator<Item = I>) -> Result<Self> {
        let a: BTreeSet<I> = a.into_iter().collect();
        let b: BTreeSet<I> = b.into_iter().collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        if a.len() != b.len() {
            return Err(Error::SizeMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        Ok(SetPair { a, b })
    }

    /// Builds the pair and checks every element against the operator's carrier.
    pub fn checked<O: Operator<Item = I>>(
        op: &O,
        a: impl IntoIterator<Item = I>,
        b: impl IntoIterator<Item = I>,
    ) -> Result<Self> {
        let pair = Self::new(a, b)?;
        pair.a.iter().chain(&pair.b).try_for_each(|x| op.check_item(x))?;
        Ok(pair)
    }

    pub fn a(&self) -> &BTreeSet<I> {
        &self.a
    }

    pub fn b(&self) -> &BTreeSet<I> {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether `B` contains the identity; always false for operators without one.
    pub fn identity_in_b<O: Operator<Item = I>>(&self, op: &O) -> bool {
        op.identity().is_some_and(|e| self.b.contains(&e))
    }
}

/// A bijection `A -> B`, stored ordered by its domain.
///
/// Whether it is a matching is a separate question; see [`is_matching`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching<I> {
    map: BTreeMap<I, I>,
}

impl<I: Clone + Ord> Matching<I> {
    /// Checks that `pairs` is a bijection from `pair.a()` onto `pair.b()`.
    pub fn new(pairs: impl IntoIterator<Item = (I, I)>, pair: &SetPair<I>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (a, b) in pairs {
            if !pair.a.contains(&a) {
                return Err(Error::NotABijection("domain element outside A".into()));
            }
            if !pair.b.contains(&b) {
                return Err(Error::NotABijection("image element outside B".into()));
            }
            if !image.insert(b.clone()) {
                return Err(Error::NotABijection("two elements share an image".into()));
            }
            if map.insert(a, b).is_some() {
                return Err(Error::NotABijection("element assigned twice".into()));
            }
        }
        if map.len() != pair.a.len() {
            return Err(Error::NotABijection("A is not fully covered".into()));
        }
        Ok(Matching { map })
    }

    /// Assumes `pairs` is already a bijection.
    pub(crate) fn from_map(map: BTreeMap<I, I>) -> Self {
        Matching { map }
    }

    pub fn get(&self, a: &I) -> Option<&I> {
        self.map.get(a)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&I, &I)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `{"pairs": [[a, b], ...]}`.
    pub fn to_json<O: Operator<Item = I>>(&self, op: &O) -> Value {
        let pairs: Vec<Value> = self
            .map
            .iter()
            .map(|(a, b)| Value::Array(vec![op.item_to_json(a), op.item_to_json(b)]))
            .collect();
        let mut obj = Map::new();
        obj.insert("pairs".into(), Value::Array(pairs));
        Value::Object(obj)
    }

    pub fn from_json<O: Operator<Item = I>>(op: &O, v: &Value, pair: &SetPair<I>) -> Result<Self> {
        let bad = || Error::Json("expected {\"pairs\": [[a, b], ...]}".into());
        let pairs = v
            .get("pairs")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((op.item_from_json(a)?, op.item_from_json(b)?)),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::new(pairs, pair)
    }

    pub fn render<O: Operator<Item = I>>(&self, op: &O) -> String {
        let body: Vec<String> = self
            .map
            .iter()
            .map(|(a, b)| format!("{}↦{}", op.format_item(a), op.format_item(b)))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// Sparse map from attained values to positive counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicityFunction<I> {
    counts: BTreeMap<I, usize>,
}

impl<I: Clone + Ord> MultiplicityFunction<I> {
    pub fn from_counts(counts: impl IntoIterator<Item = (I, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (x, n) in counts {
            if n > 0 {
                *out.entry(x).or_insert(0) += n;
            }
        }
        MultiplicityFunction { counts: out }
    }

    /// Count at `x`; zero for values not attained.
    pub fn get(&self, x: &I) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<I, usize> {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// `{"counts": {"<element literal>": n, ...}}`.
    pub fn to_json<O: Operator<Item = I>>(&self, op: &O) -> Value {
        let counts: Map<String, Value> = self
            .counts
            .iter()
            .map(|(x, n)| (op.format_item(x), Value::from(*n)))
            .collect();
        let mut obj = Map::new();
        obj.insert("counts".into(), Value::Object(counts));
        Value::Object(obj)
    }

    pub fn from_json<O: Operator<Item = I>>(op: &O, v: &Value) -> Result<Self> {
        let bad = || Error::Json("expected {\"counts\": {element: count, ...}}".into());
        let counts = v.get("counts").and_then(Value::as_object).ok_or_else(bad)?;
        let entries = counts
            .iter()
            .map(|(k, n)| {
                let n = n.as_u64().filter(|&n| n > 0).ok_or_else(bad)?;
                Ok((op.parse_item(k)?, n as usize))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_counts(entries))
    }

    pub fn render<O: Operator<Item = I>>(&self, op: &O) -> String {
        let body: Vec<String> = self
            .counts
            .iter()
            .map(|(x, n)| format!("{}:{}", op.format_item(x), n))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// `{a ⊕ b : a ∈ A, b ∈ B}`.
pub fn sumset<O: Operator>(
    a: &BTreeSet<O::Item>,
    b: &BTreeSet<O::Item>,
    op: &O,
) -> Result<BTreeSet<O::Item>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(op.apply(x, y)?);
        }
    }
    Ok(out)
}

/// `A ∩ (A ⊕ B) = ∅`, under which every bijection is a matching.
pub fn weak_condition<O: Operator>(pair: &SetPair<O::Item>, op: &O) -> Result<bool> {
    for x in &pair.a {
        for y in &pair.b {
            if pair.a.contains(&op.apply(x, y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finds an `a` with `a ⊕ f(a) ∈ A`.
pub fn matching_violation<O: Operator>(
    f: &Matching<O::Item>,
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<Option<(O::Item, O::Item)>> {
    for (a, b) in f.pairs() {
        if pair.a.contains(&op.apply(a, b)?) {
            return Ok(Some((a.clone(), b.clone())));
        }
    }
    Ok(None)
}

pub fn is_matching<O: Operator>(
    f: &Matching<O::Item>,
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<bool> {
    Ok(matching_violation(f, pair, op)?.is_none())
}

/// `x ↦ |{a : a ⊕ f(a) = x}|`, keeping only attained values.
pub fn multiplicity<O: Operator>(
    f: &Matching<O::Item>,
    op: &O,
) -> Result<MultiplicityFunction<O::Item>> {
    let mut counts = BTreeMap::new();
    for (a, b) in f.pairs() {
        *counts.entry(op.apply(a, b)?).or_insert(0) += 1;
    }
    Ok(MultiplicityFunction { counts })
}

/// No `x + y = z + w` in `B` with `{x, y} ∩ {z, w} = ∅`.
///
/// Two distinct unordered pairs with a common element cannot have equal sums
/// in a group, so the condition is that all unordered pair sums (repeats
/// allowed) are distinct.
pub fn is_sidon<T: Coord>(b: &BTreeSet<Element<T>>, group: &GroupSpec<T>) -> Result<bool> {
    let items: Vec<&Element<T>> = b.iter().collect();
    let mut seen = HashSet::new();
    for (i, x) in items.iter().enumerate() {
        for y in &items[i..] {
            if !seen.insert(group.add(x, y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `A ∩ 2A = ∅`, i.e. the identity map `A -> A` is a matching.
pub fn identity_premise<T: Coord>(a: &BTreeSet<Element<T>>, group: &GroupSpec<T>) -> Result<bool> {
    for x in a {
        if a.contains(&group.add(x, x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where a pair sits between the two extremes of matchability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnosis<T> {
    /// `A + B = A`: no matching exists. `B` has been checked to be a subgroup
    /// and `A` the coset `representative + B`.
    Blocked { representative: Element<T> },
    /// `A ∩ (A + B) = ∅`: every bijection is a matching.
    FullyFree,
    Intermediate,
}

pub fn degenerate_diagnosis<T: Coord>(
    pair: &SetPair<Element<T>>,
    group: &GroupSpec<T>,
) -> Result<Diagnosis<T>> {
    let sums = sumset(&pair.a, &pair.b, group)?;
    if sums == pair.a {
        let b = &pair.b;
        if !b.contains(&group.zero()) {
            return Err(Error::StructuralAnomaly(
                "A + B = A but B does not contain 0".into(),
            ));
        }
        for x in b {
            if !b.contains(&group.neg(x)?) {
                return Err(Error::StructuralAnomaly(format!(
                    "A + B = A but B lacks the inverse of {x}"
                )));
            }
            for y in b {
                if !b.contains(&group.add(x, y)?) {
                    return Err(Error::StructuralAnomaly(format!(
                        "A + B = A but B is not closed: {x} + {y}"
                    )));
                }
            }
        }
        let representative = pair.a.iter().next().cloned().ok_or(Error::EmptySet)?;
        let coset = b
            .iter()
            .map(|y| group.add(&representative, y))
            .collect::<Result<BTreeSet<_>>>()?;
        if coset != pair.a {
            return Err(Error::StructuralAnomaly(
                "A + B = A but A is not a coset of B".into(),
            ));
        }
        return Ok(Diagnosis::Blocked { representative });
    }
    if sums.is_disjoint(&pair.a) {
        Ok(Diagnosis::FullyFree)
    } else {
        Ok(Diagnosis::Intermediate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_set;
    use itertools::Itertools;
    use proptest::prelude::*;

    type G = GroupSpec<i64>;

    fn z(n: i64) -> G {
        GroupSpec::cyclic(n).unwrap()
    }

    fn set(g: &G, s: &str) -> BTreeSet<Element<i64>> {
        parse_set(g, s).unwrap()
    }

    fn pair(g: &G, a: &str, b: &str) -> SetPair<Element<i64>> {
        SetPair::checked(g, set(g, a), set(g, b)).unwrap()
    }

    fn matching(g: &G, p: &SetPair<Element<i64>>, pairs: &[(i64, i64)]) -> Matching<Element<i64>> {
        let e = |v: i64| g.element(vec![v]).unwrap();
        Matching::new(pairs.iter().map(|&(a, b)| (e(a), e(b))), p).unwrap()
    }

    fn all_bijections(p: &SetPair<Element<i64>>) -> Vec<Matching<Element<i64>>> {
        let b: Vec<_> = p.b().iter().cloned().collect();
        (0..b.len())
            .permutations(b.len())
            .map(|perm| {
                Matching::new(p.a().iter().cloned().zip(perm.iter().map(|&i| b[i].clone())), p)
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn sumset_examples() {
        let g = z(13);
        let s = sumset(&set(&g, "{0,1,2,7}"), &set(&g, "{3,4,9,10}"), &g).unwrap();
        assert_eq!(s, set(&g, "{3,4,5,6,9,10,11,12}"));
        let a = set(&g, "{1,5,8}");
        assert_eq!(sumset(&a, &set(&g, "{0}"), &g).unwrap(), a);
        let z4 = z(4);
        let s = sumset(&set(&z4, "{0,2}"), &set(&z4, "{1,2}"), &z4).unwrap();
        assert_eq!(s, set(&z4, "{0,1,2,3}"));
    }

    #[test]
    fn weak_condition_examples() {
        let g = z(13);
        assert!(weak_condition(&pair(&g, "{0,1,2,7}", "{3,4,9,10}"), &g).unwrap());
        assert!(!weak_condition(&pair(&g, "{5}", "{0}"), &g).unwrap());
        let z4 = z(4);
        assert!(!weak_condition(&pair(&z4, "{0,2}", "{1,2}"), &z4).unwrap());
    }

    #[test]
    fn is_matching_examples() {
        let g = z(13);
        let p = pair(&g, "{0,1,2,7}", "{3,4,9,10}");
        let f0 = matching(&g, &p, &[(0, 3), (1, 4), (2, 10), (7, 9)]);
        assert!(is_matching(&f0, &p, &g).unwrap());

        let z4 = z(4);
        let p4 = pair(&z4, "{0,2}", "{1,2}");
        let f = matching(&z4, &p4, &[(0, 1), (2, 2)]);
        assert!(!is_matching(&f, &p4, &z4).unwrap());
        let (a, b) = matching_violation(&f, &p4, &z4).unwrap().unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("2".into(), "2".into()));
    }

    #[test]
    fn multiplicity_examples() {
        let g = z(13);
        let p = pair(&g, "{0,1,2,7}", "{3,4,9,10}");
        let f0 = matching(&g, &p, &[(0, 3), (1, 4), (2, 10), (7, 9)]);
        let m = multiplicity(&f0, &g).unwrap();
        assert_eq!(m.render(&g), "{3:2, 5:1, 12:1}");

        let single = pair(&g, "{4}", "{11}");
        let m1 = multiplicity(&matching(&g, &single, &[(4, 11)]), &g).unwrap();
        assert_eq!(m1.render(&g), "{2:1}");

        let p13 = pair(&g, "{1,3}", "{1,3}");
        let id = matching(&g, &p13, &[(1, 1), (3, 3)]);
        assert_eq!(multiplicity(&id, &g).unwrap().render(&g), "{2:1, 6:1}");
    }

    #[test]
    fn matching_rejects_non_bijections() {
        let g = z(13);
        let p = pair(&g, "{1,3}", "{4,5}");
        let e = |v: i64| g.element(vec![v]).unwrap();
        assert!(Matching::new([(e(1), e(4))], &p).is_err());
        assert!(Matching::new([(e(1), e(4)), (e(3), e(4))], &p).is_err());
        assert!(Matching::new([(e(1), e(4)), (e(1), e(5))], &p).is_err());
        assert!(Matching::new([(e(1), e(1)), (e(3), e(3))], &p).is_err());
    }

    #[test]
    fn set_pair_invariants() {
        let g = z(13);
        assert_eq!(
            SetPair::checked(&g, set(&g, "{1,2}"), set(&g, "{3}")),
            Err(Error::SizeMismatch { a: 2, b: 1 })
        );
        assert_eq!(SetPair::<Element<i64>>::new([], []), Err(Error::EmptySet));
        let bad = Element::from_coords(vec![20]);
        assert!(SetPair::checked(&g, [bad.clone()], [bad]).is_err());
        assert!(pair(&g, "{1}", "{0}").identity_in_b(&g));
    }

    #[test]
    fn sidon_examples() {
        let g = z(13);
        assert!(is_sidon(&set(&g, "{1,2,5}"), &g).unwrap());
        let z8 = z(8);
        assert!(!is_sidon(&set(&z8, "{1,3,5,7}"), &z8).unwrap());
        // 0 + 0 = 4 + 4
        assert!(!is_sidon(&set(&z8, "{0,4}"), &z8).unwrap());
        assert!(is_sidon(&set(&z8, "{0,1}"), &z8).unwrap());
        assert!(is_sidon(&set(&z8, "{3}"), &z8).unwrap());
    }

    #[test]
    fn identity_premise_examples() {
        let g = z(13);
        assert!(identity_premise(&set(&g, "{1,3}"), &g).unwrap());
        assert!(!identity_premise(&set(&g, "{0,5}"), &g).unwrap());
        let z5 = z(5);
        assert!(!identity_premise(&set(&z5, "{1,2}"), &z5).unwrap());
    }

    #[test]
    fn diagnosis_examples() {
        let z4 = z(4);
        let d = degenerate_diagnosis(&pair(&z4, "{1,3}", "{0,2}"), &z4).unwrap();
        assert_eq!(
            d,
            Diagnosis::Blocked {
                representative: z4.element(vec![1]).unwrap()
            }
        );
        let g = z(13);
        assert_eq!(
            degenerate_diagnosis(&pair(&g, "{0,1,2,7}", "{3,4,9,10}"), &g).unwrap(),
            Diagnosis::FullyFree
        );
        assert_eq!(
            degenerate_diagnosis(&pair(&z4, "{0,2}", "{1,2}"), &z4).unwrap(),
            Diagnosis::Intermediate
        );
    }

    #[test]
    fn diagnosis_never_anomalous_on_small_groups() {
        for g in ["Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z2xZ4", "Z3xZ3"] {
            let g: G = g.parse().unwrap();
            let els = g.elements().unwrap();
            for k in 1..=els.len().min(4) {
                for a in els.iter().cloned().combinations(k) {
                    for b in els.iter().cloned().combinations(k) {
                        let p = SetPair::new(a.clone(), b).unwrap();
                        let d = degenerate_diagnosis(&p, &g);
                        assert!(d.is_ok(), "{g} {:?}", p);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_in_b_blocks_the_element_it_is_assigned_to() {
        let g = z(7);
        let p = pair(&g, "{1,2,4}", "{0,3,5}");
        for f in all_bijections(&p) {
            let zero_assigned = f.pairs().any(|(_, b)| b == &g.zero());
            assert!(zero_assigned);
            assert!(!is_matching(&f, &p, &g).unwrap());
        }
    }

    /// Quadruple brute force, kept independent of the pair-sum shortcut.
    fn sidon_quadruples(b: &BTreeSet<Element<i64>>, g: &G) -> bool {
        let v: Vec<_> = b.iter().collect();
        for x in &v {
            for y in &v {
                for zz in &v {
                    for w in &v {
                        let disjoint = x != zz && x != w && y != zz && y != w;
                        if disjoint && g.add(x, y).unwrap() == g.add(zz, w).unwrap() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn cyclic_pair(max_n: i64, max_k: usize) -> impl Strategy<Value = (G, SetPair<Element<i64>>)> {
        (2..=max_n)
            .prop_flat_map(move |n| {
                let k_max = max_k.min(n as usize);
                (Just(n), 1..=k_max)
            })
            .prop_flat_map(|(n, k)| {
                (
                    Just(n),
                    prop::sample::subsequence((0..n).collect::<Vec<_>>(), k),
                    prop::sample::subsequence((0..n).collect::<Vec<_>>(), k),
                )
            })
            .prop_map(|(n, a, b)| {
                let g = z(n);
                let e = |v: i64| g.element(vec![v]).unwrap();
                let p = SetPair::new(a.into_iter().map(e), b.into_iter().map(e)).unwrap();
                (g, p)
            })
    }

    proptest! {
        #[test]
        fn sidon_agrees_with_quadruple_oracle(
            n in 2i64..=30,
            raw in prop::collection::btree_set(0i64..30, 1..=8),
        ) {
            let g = z(n);
            let b: BTreeSet<_> = raw.into_iter().map(|v| g.element(vec![v % n]).unwrap()).collect();
            prop_assert_eq!(is_sidon(&b, &g).unwrap(), sidon_quadruples(&b, &g));
        }

        #[test]
        fn multiplicity_totals_and_weak_condition((g, p) in cyclic_pair(13, 5)) {
            let weak = weak_condition(&p, &g).unwrap();
            for f in all_bijections(&p) {
                prop_assert_eq!(multiplicity(&f, &g).unwrap().total(), p.len());
                if weak {
                    prop_assert!(is_matching(&f, &p, &g).unwrap());
                }
            }
        }

        #[test]
        fn matching_json_round_trip((g, p) in cyclic_pair(13, 5)) {
            for f in all_bijections(&p).into_iter().take(3) {
                let back = Matching::from_json(&g, &f.to_json(&g), &p).unwrap();
                prop_assert_eq!(&back, &f);
                let m = multiplicity(&f, &g).unwrap();
                prop_assert_eq!(MultiplicityFunction::from_json(&g, &m.to_json(&g)).unwrap(), m);
            }
        }
    }
}
