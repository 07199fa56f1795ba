use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde_json::{json, Value};

use super::{CancellationWitness, Operator};
use crate::error::{Error, Result};

/// A carrier element of a [`CayleyTable`], identified by its carrier position.
///
/// Ordering follows the carrier order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub usize);

/// A binary operation given explicitly by its table over a finite carrier.
///
/// Row index is the left operand. Only membership of every entry in the
/// carrier is required at construction; left cancellation and the Latin
/// property are checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    carrier: Vec<String>,
    table: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl CayleyTable {
    pub fn new(carrier: Vec<String>, table: Vec<Vec<String>>) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in carrier.iter().enumerate() {
            if label.is_empty() || label.contains(|c: char| ",{}()".contains(c) || c.is_whitespace())
            {
                return Err(Error::MalformedTable(format!("bad label `{label}`")));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::MalformedTable(format!("duplicate label `{label}`")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("table is not {n}x{n}")));
        }
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|l| index.get(&l).copied().ok_or(Error::UnknownLabel(l)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CayleyTable {
            carrier,
            table,
            index,
        })
    }

    /// Builds a table over labels `0..n` from carrier positions.
    pub fn from_indices(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let carrier = (0..n).map(|i| i.to_string()).collect();
        let rows = table
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.to_string()).collect())
            .collect();
        Self::new(carrier, rows)
    }

    /// Parses `{"carrier": [...], "table": [[...], ...]}`; labels may be strings or integers.
    pub fn from_json(v: &Value) -> Result<Self> {
        let label = |v: &Value| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Error::MalformedTable(format!("bad label {other}"))),
        };
        let carrier = v
            .get("carrier")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedTable("missing `carrier` array".into()))?
            .iter()
            .map(label)
            .collect::<Result<Vec<_>>>()?;
        let table = v
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedTable("missing `table` array".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::MalformedTable("table row is not an array".into()))?
                    .iter()
                    .map(label)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(carrier, table)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<&str>> = self
            .table
            .iter()
            .map(|row| row.iter().map(|&i| self.carrier[i].as_str()).collect())
            .collect();
        json!({ "carrier": self.carrier, "table": rows })
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier_labels(&self) -> &[String] {
        &self.carrier
    }

    pub fn label(&self, name: &str) -> Result<Label> {
        self.index
            .get(name)
            .map(|&i| Label(i))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn name(&self, l: Label) -> &str {
        &self.carrier[l.0]
    }

    pub fn get(&self, a: Label, b: Label) -> Label {
        Label(self.table[a.0][b.0])
    }

    /// True iff every row and every column is a permutation of the carrier.
    pub fn is_latin(&self) -> bool {
        let n = self.order();
        let perm = |values: Vec<usize>| {
            let mut seen = vec![false; n];
            values.into_iter().all(|v| !std::mem::replace(&mut seen[v], true))
        };
        (0..n).all(|r| perm(self.table[r].clone()))
            && (0..n).all(|c| perm(self.table.iter().map(|row| row[c]).collect()))
    }

    fn check_label(&self, l: &Label) -> Result<()> {
        if l.0 < self.order() {
            Ok(())
        } else {
            Err(Error::UnknownLabel(format!("#{}", l.0)))
        }
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table[{}]", self.carrier.join(","))
    }
}

impl Operator for CayleyTable {
    type Item = Label;

    fn apply(&self, a: &Label, b: &Label) -> Result<Label> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(self.get(*a, *b))
    }

    fn unapply(&self, c: &Label, a: &Label) -> Result<Option<Label>> {
        self.check_label(c)?;
        self.check_label(a)?;
        let mut hits = self.table[a.0]
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == c.0)
            .map(|(b, _)| b);
        let first = hits.next();
        if let (Some(b1), Some(b2)) = (first, hits.next()) {
            return Err(Error::CancellationViolation {
                a: self.carrier[a.0].clone(),
                b1: self.carrier[b1].clone(),
                b2: self.carrier[b2].clone(),
            });
        }
        Ok(first.map(Label))
    }

    fn check_item(&self, x: &Label) -> Result<()> {
        self.check_label(x)
    }

    fn validate_left_cancellation(&self) -> Result<(), CancellationWitness<Label>> {
        let n = self.order();
        for (a, row) in self.table.iter().enumerate() {
            let mut first_col = vec![usize::MAX; n];
            for (b, &v) in row.iter().enumerate() {
                if first_col[v] != usize::MAX {
                    return Err(CancellationWitness {
                        a: Label(a),
                        b1: Label(first_col[v]),
                        b2: Label(b),
                    });
                }
                first_col[v] = b;
            }
        }
        Ok(())
    }

    fn carrier(&self) -> Option<Vec<Label>> {
        Some((0..self.order()).map(Label).collect())
    }

    fn identity(&self) -> Option<Label> {
        None
    }

    fn sample_item(&self, rng: &mut dyn RngCore) -> Label {
        Label(rng.gen_range(0..self.order()))
    }

    fn parse_item(&self, text: &str) -> Result<Label> {
        self.label(text.trim())
    }

    fn format_item(&self, x: &Label) -> String {
        self.carrier
            .get(x.0)
            .cloned()
            .unwrap_or_else(|| format!("#{}", x.0))
    }

    fn item_to_json(&self, x: &Label) -> Value {
        Value::String(self.format_item(x))
    }

    fn item_from_json(&self, v: &Value) -> Result<Label> {
        match v {
            Value::String(s) => self.label(s),
            Value::Number(n) => self.label(&n.to_string()),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// Draws a Latin square of the given order by randomized backtracking,
/// then relabels rows, columns and symbols with random permutations.
///
/// Not uniform over Latin squares, but reaches non-group (non-associative)
/// squares for orders of 5 and above.
pub fn random_latin_square<R: Rng + ?Sized>(order: usize, rng: &mut R) -> CayleyTable {
    assert!(order > 0, "order must be positive");
    let n = order;
    let mut grid = vec![usize::MAX; n * n];
    let mut choices: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let mut cell = 0;
    while cell < n * n {
        if grid[cell] == usize::MAX {
            let (r, c) = (cell / n, cell % n);
            let mut cand: Vec<usize> = (0..n)
                .filter(|&v| {
                    (0..c).all(|k| grid[r * n + k] != v) && (0..r).all(|k| grid[k * n + c] != v)
                })
                .collect();
            cand.shuffle(rng);
            choices[cell] = cand;
        }
        match choices[cell].pop() {
            Some(v) => {
                grid[cell] = v;
                cell += 1;
            }
            None => {
                grid[cell] = usize::MAX;
                cell -= 1;
            }
        }
    }
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut syms: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    syms.shuffle(rng);
    let mut table = vec![vec![0; n]; n];
    for r in 0..n {
        for c in 0..n {
            table[rows[r]][cols[c]] = syms[grid[r * n + c]];
        }
    }
    CayleyTable::from_indices(table).expect("generated square is well formed")
}
