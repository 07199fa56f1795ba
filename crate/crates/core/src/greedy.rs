//! Greedy construction of a bijection with a unique multiplicity function.
//!
//! Label the image `C' = A ⊕ B` as `c_1, …, c_k`. Starting from `A_1 = A`,
//! `B_1 = B`, step `j` selects every active `a` whose partner `c_j ⊖ a` is
//! still active, assigns `f(a) = c_j ⊖ a`, and removes both sides. Each step
//! takes as many `a` to `c_j` as the earlier assignments allow, which is what
//! pins the multiplicity function to a single bijection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::Operator;
use crate::error::{Error, Result};
use crate::matching::{sumset, weak_condition, Matching, SetPair};

/// How the image `C'` is labelled `c_1, …, c_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CsOrder {
    #[default]
    Ascending,
    Descending,
    /// Seeded shuffle of the ascending order.
    Shuffled(u64),
}

impl FromStr for CsOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "asc" => Ok(CsOrder::Ascending),
            "desc" => Ok(CsOrder::Descending),
            _ => s
                .strip_prefix("seed:")
                .and_then(|n| n.parse().ok())
                .map(CsOrder::Shuffled)
                .ok_or_else(|| format!("bad order `{s}`: expected asc, desc or seed:<n>")),
        }
    }
}

impl fmt::Display for CsOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsOrder::Ascending => f.write_str("asc"),
            CsOrder::Descending => f.write_str("desc"),
            CsOrder::Shuffled(seed) => write!(f, "seed:{seed}"),
        }
    }
}

/// One pass over `c_j`; `active_a`/`active_b` are `A_j`/`B_j` before the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyStep<I> {
    pub j: usize,
    pub c: I,
    pub active_a: Vec<I>,
    pub active_b: Vec<I>,
    pub selected: Vec<I>,
    pub assigned: Vec<(I, I)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace<I> {
    pub cs: Vec<I>,
    pub steps: Vec<GreedyStep<I>>,
}

impl<I: Clone + Ord> GreedyTrace<I> {
    /// The bijection assembled from every step's assignments.
    pub fn assignments(&self) -> BTreeMap<I, I> {
        self.steps
            .iter()
            .flat_map(|s| s.assigned.iter().cloned())
            .collect()
    }

    /// Replays the set differences and checks them against the recorded active sets.
    ///
    /// Returns a description of the first inconsistency.
    pub fn check_consistency<O: Operator<Item = I>>(
        &self,
        pair: &SetPair<I>,
        op: &O,
    ) -> std::result::Result<(), String> {
        let image = sumset(pair.a(), pair.b(), op).map_err(|e| e.to_string())?;
        let cs: BTreeSet<I> = self.cs.iter().cloned().collect();
        if cs.len() != self.cs.len() || cs != image {
            return Err("cs is not the image of A × B".into());
        }
        if self.steps.len() != self.cs.len() {
            return Err("one step per c_j expected".into());
        }
        let mut a: BTreeSet<I> = pair.a().clone();
        let mut b: BTreeSet<I> = pair.b().clone();
        for (idx, step) in self.steps.iter().enumerate() {
            if step.j != idx + 1 || step.c != self.cs[idx] {
                return Err(format!("step {} is out of sequence", idx + 1));
            }
            if !step.active_a.iter().eq(a.iter()) || !step.active_b.iter().eq(b.iter()) {
                return Err(format!("step {}: active sets diverge from replay", step.j));
            }
            let picked: Vec<&I> = step.assigned.iter().map(|(x, _)| x).collect();
            if !step.selected.iter().eq(picked) {
                return Err(format!("step {}: selected ≠ assigned domain", step.j));
            }
            for (x, y) in &step.assigned {
                let hit = op.apply(x, y).map_err(|e| e.to_string())?;
                if hit != step.c || !a.remove(x) || !b.remove(y) {
                    return Err(format!("step {}: bad assignment", step.j));
                }
            }
        }
        if !a.is_empty() || !b.is_empty() {
            return Err("active sets not exhausted".into());
        }
        Ok(())
    }

    /// `{"cs": [...], "steps": [{"j", "A", "B", "selected", "assigned"}, ...]}`.
    pub fn to_json<O: Operator<Item = I>>(&self, op: &O) -> Value {
        let items = |xs: &[I]| Value::Array(xs.iter().map(|x| op.item_to_json(x)).collect());
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let assigned: Vec<Value> = s
                    .assigned
                    .iter()
                    .map(|(a, b)| json!([op.item_to_json(a), op.item_to_json(b)]))
                    .collect();
                json!({
                    "j": s.j,
                    "c": op.item_to_json(&s.c),
                    "A": items(&s.active_a),
                    "B": items(&s.active_b),
                    "selected": items(&s.selected),
                    "assigned": assigned,
                })
            })
            .collect();
        json!({ "cs": items(&self.cs), "steps": steps })
    }

    pub fn from_json<O: Operator<Item = I>>(op: &O, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Json(format!("trace: {what}"));
        let items = |v: Option<&Value>, what: &str| -> Result<Vec<I>> {
            v.and_then(Value::as_array)
                .ok_or_else(|| bad(what))?
                .iter()
                .map(|x| op.item_from_json(x))
                .collect()
        };
        let cs = items(v.get("cs"), "cs")?;
        let steps = v
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("steps"))?
            .iter()
            .map(|s| {
                let j = s.get("j").and_then(Value::as_u64).ok_or_else(|| bad("j"))? as usize;
                let c = match s.get("c") {
                    Some(c) => op.item_from_json(c)?,
                    None => cs.get(j.wrapping_sub(1)).cloned().ok_or_else(|| bad("c"))?,
                };
                let assigned = s
                    .get("assigned")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("assigned"))?
                    .iter()
                    .map(|p| match p.as_array().map(Vec::as_slice) {
                        Some([a, b]) => Ok((op.item_from_json(a)?, op.item_from_json(b)?)),
                        _ => Err(bad("assigned pair")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GreedyStep {
                    j,
                    c,
                    active_a: items(s.get("A"), "A")?,
                    active_b: items(s.get("B"), "B")?,
                    selected: items(s.get("selected"), "selected")?,
                    assigned,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GreedyTrace { cs, steps })
    }
}

/// Rejects operators whose rows are not injective on `A × B`.
fn check_rows<O: Operator>(pair: &SetPair<O::Item>, op: &O) -> Result<()> {
    for a in pair.a() {
        let mut seen: BTreeMap<O::Item, &O::Item> = BTreeMap::new();
        for b in pair.b() {
            if let Some(prev) = seen.insert(op.apply(a, b)?, b) {
                return Err(Error::CancellationViolation {
                    a: op.format_item(a),
                    b1: op.format_item(prev),
                    b2: op.format_item(b),
                });
            }
        }
    }
    Ok(())
}

/// Builds the bijection `f_0` and its step trace.
pub fn greedy_construct<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
    order: CsOrder,
) -> Result<(Matching<O::Item>, GreedyTrace<O::Item>)> {
    check_rows(pair, op)?;
    let mut cs: Vec<O::Item> = sumset(pair.a(), pair.b(), op)?.into_iter().collect();
    match order {
        CsOrder::Ascending => {}
        CsOrder::Descending => cs.reverse(),
        CsOrder::Shuffled(seed) => cs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }

    let mut active_a = pair.a().clone();
    let mut active_b = pair.b().clone();
    let mut f = BTreeMap::new();
    let mut steps = Vec::with_capacity(cs.len());
    for (idx, c) in cs.iter().enumerate() {
        let mut selected = Vec::new();
        let mut assigned: Vec<(O::Item, O::Item)> = Vec::new();
        for a in &active_a {
            let Some(b) = op.unapply(c, a)? else { continue };
            if !active_b.contains(&b) {
                continue;
            }
            if let Some((a1, _)) = assigned.iter().find(|(_, used)| *used == b) {
                return Err(Error::StepCollision {
                    a1: op.format_item(a1),
                    a2: op.format_item(a),
                    b: op.format_item(&b),
                });
            }
            selected.push(a.clone());
            assigned.push((a.clone(), b));
        }
        steps.push(GreedyStep {
            j: idx + 1,
            c: c.clone(),
            active_a: active_a.iter().cloned().collect(),
            active_b: active_b.iter().cloned().collect(),
            selected,
            assigned: assigned.clone(),
        });
        for (a, b) in assigned {
            active_a.remove(&a);
            active_b.remove(&b);
            f.insert(a, b);
        }
    }
    debug_assert!(active_a.is_empty() && active_b.is_empty());
    Ok((Matching::from_map(f), GreedyTrace { cs, steps }))
}

/// Under `A ∩ (A ⊕ B) = ∅` the greedy bijection is an acyclic matching.
pub fn construct_acyclic_matching<O: Operator>(
    pair: &SetPair<O::Item>,
    op: &O,
) -> Result<Matching<O::Item>> {
    if !weak_condition(pair, op)? {
        return Err(Error::WeakConditionFails);
    }
    greedy_construct(pair, op, CsOrder::Ascending).map(|(f, _)| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::{format_set, parse_set};
    use crate::algebra::{CayleyTable, GroupSpec};

    fn z(n: i64) -> GroupSpec<i64> {
        GroupSpec::cyclic(n).unwrap()
    }

    fn pair(g: &GroupSpec<i64>, a: &str, b: &str) -> SetPair<crate::algebra::Element<i64>> {
        SetPair::checked(g, parse_set(g, a).unwrap(), parse_set(g, b).unwrap()).unwrap()
    }

    #[test]
    fn reproduces_worked_example() {
        let g = z(13);
        let p = pair(&g, "{0,1,2,7}", "{3,4,9,10}");
        let (f, trace) = greedy_construct(&p, &g, CsOrder::Ascending).unwrap();
        assert_eq!(f.render(&g), "{0↦3, 1↦4, 2↦10, 7↦9}");
        assert_eq!(format_set(&g, &trace.cs), "{3,4,5,6,9,10,11,12}");

        let fmt = |xs: &[_]| format_set(&g, xs);
        let s = &trace.steps;
        assert_eq!((fmt(&s[0].active_a), fmt(&s[0].active_b)), ("{0,1,2,7}".into(), "{3,4,9,10}".into()));
        assert_eq!(fmt(&s[0].selected), "{0,7}");
        assert_eq!((fmt(&s[1].active_a), fmt(&s[1].active_b)), ("{1,2}".into(), "{4,10}".into()));
        assert!(s[1].selected.is_empty());
        assert_eq!(fmt(&s[2].selected), "{1}");
        for step in &s[3..] {
            assert_eq!((fmt(&step.active_a), fmt(&step.active_b)), ("{2}".into(), "{10}".into()));
        }
        assert!(s[3..7].iter().all(|st| st.selected.is_empty()));
        assert_eq!(s[7].j, 8);
        assert_eq!(g.format_item(&s[7].c), "12");
        assert_eq!(fmt(&s[7].selected), "{2}");
        trace.check_consistency(&p, &g).unwrap();
    }

    #[test]
    fn singleton_pair() {
        let g = z(13);
        let p = pair(&g, "{5}", "{5}");
        let (f, trace) = greedy_construct(&p, &g, CsOrder::Descending).unwrap();
        assert_eq!(f.render(&g), "{5↦5}");
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn acyclic_requires_weak_condition() {
        let z4 = z(4);
        let p = pair(&z4, "{0,2}", "{1,2}");
        assert_eq!(
            construct_acyclic_matching(&p, &z4),
            Err(Error::WeakConditionFails)
        );
        let z7 = z(7);
        let p7 = pair(&z7, "{1}", "{3}");
        assert_eq!(construct_acyclic_matching(&p7, &z7).unwrap().render(&z7), "{1↦3}");
    }

    #[test]
    fn free_group_pair() {
        let g: GroupSpec<i64> = "ZxZ".parse().unwrap();
        let p = pair(&g, "{(0,0),(1,0)}", "{(5,5),(6,5)}");
        let f = construct_acyclic_matching(&p, &g).unwrap();
        assert_eq!(f.render(&g), "{(0,0)↦(5,5), (1,0)↦(6,5)}");
    }

    #[test]
    fn rejects_non_cancellative_rows() {
        let t = CayleyTable::from_indices(vec![vec![0, 0], vec![1, 0]]).unwrap();
        let p = SetPair::checked(&t, t.carrier().unwrap(), t.carrier().unwrap()).unwrap();
        assert!(matches!(
            greedy_construct(&p, &t, CsOrder::Ascending),
            Err(Error::CancellationViolation { .. })
        ));
    }

    #[test]
    fn rejects_step_collisions() {
        // a ⊕ b = b: rows injective, columns constant
        let t = CayleyTable::from_indices(vec![vec![0, 1], vec![0, 1]]).unwrap();
        let p = SetPair::checked(&t, t.carrier().unwrap(), t.carrier().unwrap()).unwrap();
        assert!(matches!(
            greedy_construct(&p, &t, CsOrder::Ascending),
            Err(Error::StepCollision { .. })
        ));
    }

    #[test]
    fn trace_json_round_trip() {
        let g = z(13);
        let p = pair(&g, "{0,1,2,7}", "{3,4,9,10}");
        for order in [CsOrder::Ascending, CsOrder::Descending, CsOrder::Shuffled(9)] {
            let (_, trace) = greedy_construct(&p, &g, order).unwrap();
            let back = GreedyTrace::from_json(&g, &trace.to_json(&g)).unwrap();
            assert_eq!(back, trace);
        }
    }

    #[test]
    fn order_parsing() {
        assert_eq!("asc".parse(), Ok(CsOrder::Ascending));
        assert_eq!("desc".parse(), Ok(CsOrder::Descending));
        assert_eq!("seed:42".parse(), Ok(CsOrder::Shuffled(42)));
        assert!("seed:x".parse::<CsOrder>().is_err());
        assert_eq!(CsOrder::Shuffled(3).to_string(), "seed:3");
    }

    #[test]
    fn tampered_trace_is_caught() {
        let g = z(13);
        let p = pair(&g, "{0,1,2,7}", "{3,4,9,10}");
        let (_, mut trace) = greedy_construct(&p, &g, CsOrder::Ascending).unwrap();
        trace.steps[1].active_b.pop();
        assert!(trace.check_consistency(&p, &g).is_err());
    }
}
