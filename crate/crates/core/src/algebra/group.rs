use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use serde_json::Value;

use super::{CancellationWitness, Coord, Operator};
use crate::error::{Error, Result};

/// Half-width of the box free coordinates are sampled from.
pub const FREE_SAMPLE_RADIUS: i64 = 8;

/// A finite-rank abelian group `Z/n_1 × … × Z/n_k`.
///
/// A modulus of zero encodes a free `Z` factor. Only finitely many elements
/// are ever touched, so free factors are never enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec<T> {
    moduli: Vec<T>,
}

/// A group element as a coordinate vector; finite coordinates are canonical residues.
///
/// Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element<T> {
    coords: Vec<T>,
}

impl<T: Coord> Element<T> {
    /// Wraps raw coordinates without checking them against any group.
    pub fn from_coords(coords: Vec<T>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

impl<T: Coord> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl<T: Coord> GroupSpec<T> {
    pub fn new(moduli: Vec<T>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some(m) = moduli.iter().find(|m| m.is_negative()) {
            return Err(Error::NegativeModulus(m.to_string()));
        }
        Ok(GroupSpec { moduli })
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: T) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The free group `Z^rank`.
    pub fn free(rank: usize) -> Result<Self> {
        Self::new(vec![T::zero(); rank])
    }

    pub fn moduli(&self) -> &[T] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|m| !m.is_zero())
    }

    /// Number of elements, or `None` for infinite groups (or orders beyond `usize`).
    pub fn order(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        self.moduli
            .iter()
            .try_fold(1usize, |acc, m| acc.checked_mul(m.to_usize()?))
    }

    pub fn zero(&self) -> Element<T> {
        Element::from_coords(vec![T::zero(); self.rank()])
    }

    /// Builds an element, checking rank and canonical residues.
    pub fn element(&self, coords: Vec<T>) -> Result<Element<T>> {
        let e = Element::from_coords(coords);
        self.check(&e)?;
        Ok(e)
    }

    /// Builds an element, reducing finite coordinates to canonical residues.
    pub fn reduce(&self, mut coords: Vec<T>) -> Result<Element<T>> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        for (c, m) in coords.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *c = c.rem_euclid(m);
            }
        }
        Ok(Element::from_coords(coords))
    }

    pub fn check(&self, e: &Element<T>) -> Result<()> {
        if e.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: e.rank(),
            });
        }
        for (c, m) in e.coords.iter().zip(&self.moduli) {
            if !m.is_zero() && (c.is_negative() || c >= m) {
                return Err(Error::NotCanonical {
                    value: c.to_string(),
                    modulus: m.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
        self.combine(a, b, |x, y| x.checked_add(&y))
    }

    pub fn sub(&self, a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
        self.combine(a, b, |x, y| x.checked_sub(&y))
    }

    pub fn neg(&self, a: &Element<T>) -> Result<Element<T>> {
        self.sub(&self.zero(), a)
    }

    fn combine(
        &self,
        a: &Element<T>,
        b: &Element<T>,
        f: impl Fn(T, T) -> Option<T>,
    ) -> Result<Element<T>> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| {
                let v = f(x, y).ok_or(Error::Overflow)?;
                Ok(if m.is_zero() { v } else { v.rem_euclid(&m) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::from_coords(coords))
    }

    /// All elements in lexicographic order, when the group is finite.
    pub fn elements(&self) -> Option<Vec<Element<T>>> {
        let order = self.order()?;
        let mut out = Vec::with_capacity(order);
        let mut cur = vec![T::zero(); self.rank()];
        for _ in 0..order {
            out.push(Element::from_coords(cur.clone()));
            for i in (0..cur.len()).rev() {
                cur[i] = cur[i] + T::one();
                if cur[i] < self.moduli[i] {
                    break;
                }
                cur[i] = T::zero();
            }
        }
        Some(out)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element<T>> {
        let t = text.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::MalformedElement(t.to_string()))?,
            None => t,
        };
        let coords = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<T>()
                    .map_err(|_| Error::MalformedElement(t.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }
}

impl<T: Coord> fmt::Display for GroupSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            if m.is_zero() {
                f.write_str("Z")?;
            } else {
                write!(f, "Z{m}")?;
            }
        }
        Ok(())
    }
}

impl<T: Coord> FromStr for GroupSpec<T> {
    type Err = Error;

    /// Parses `Z<n>` factors joined by `x`; a bare `Z` is a free factor.
    fn from_str(text: &str) -> Result<Self> {
        let malformed = || Error::MalformedGroup(text.to_string());
        let t = text.trim();
        if t.is_empty() {
            return Err(malformed());
        }
        let moduli = t
            .split('x')
            .map(|factor| {
                let digits = factor.strip_prefix('Z').ok_or_else(malformed)?;
                if digits.is_empty() {
                    return Ok(T::zero());
                }
                if !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                let n = digits.parse::<T>().map_err(|_| malformed())?;
                if n.is_zero() {
                    return Err(malformed());
                }
                Ok(n)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(moduli)
    }
}

impl<T: Coord> Operator for GroupSpec<T> {
    type Item = Element<T>;

    fn apply(&self, a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
        self.add(a, b)
    }

    fn unapply(&self, c: &Element<T>, a: &Element<T>) -> Result<Option<Element<T>>> {
        self.sub(c, a).map(Some)
    }

    fn check_item(&self, x: &Element<T>) -> Result<()> {
        self.check(x)
    }

    fn validate_left_cancellation(&self) -> Result<(), CancellationWitness<Element<T>>> {
        Ok(())
    }

    fn carrier(&self) -> Option<Vec<Element<T>>> {
        self.elements()
    }

    fn identity(&self) -> Option<Element<T>> {
        Some(self.zero())
    }

    fn sample_item(&self, rng: &mut dyn RngCore) -> Element<T> {
        let coords = self
            .moduli
            .iter()
            .map(|m| {
                if m.is_zero() {
                    let v = rng.gen_range(-FREE_SAMPLE_RADIUS..=FREE_SAMPLE_RADIUS);
                    T::from(v).unwrap_or_else(T::zero)
                } else {
                    let n = m.to_u64().unwrap_or(u64::MAX);
                    T::from(rng.gen_range(0..n)).unwrap_or_else(T::zero)
                }
            })
            .collect();
        Element::from_coords(coords)
    }

    fn parse_item(&self, text: &str) -> Result<Element<T>> {
        self.parse_element(text)
    }

    fn format_item(&self, x: &Element<T>) -> String {
        x.to_string()
    }

    fn item_to_json(&self, x: &Element<T>) -> Value {
        let coords: Vec<Value> = x
            .coords
            .iter()
            .map(|c| Value::from(c.to_i64().unwrap_or(i64::MAX)))
            .collect();
        if coords.len() == 1 {
            coords.into_iter().next().unwrap_or(Value::Null)
        } else {
            Value::Array(coords)
        }
    }

    fn item_from_json(&self, v: &Value) -> Result<Element<T>> {
        let coord = |v: &Value| {
            v.as_i64()
                .and_then(T::from)
                .ok_or_else(|| Error::MalformedElement(v.to_string()))
        };
        match v {
            Value::String(s) => self.parse_element(s),
            Value::Array(items) => self.element(items.iter().map(coord).collect::<Result<_>>()?),
            Value::Number(_) => self.element(vec![coord(v)?]),
            _ => Err(Error::MalformedElement(v.to_string())),
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}
