//! Set literals: `{0,1,2,7}`, `{(0,0),(1,0)}`, `{x,y}`.

use std::collections::BTreeSet;

use super::Operator;
use crate::error::{Error, Result};

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

/// Parses a braced set literal into a canonically ordered, deduplicated set.
pub fn parse_set<O: Operator>(op: &O, text: &str) -> Result<BTreeSet<O::Item>> {
    let malformed = || Error::MalformedSet(text.to_string());
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(malformed)?;
    if inner.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    split_top_level(inner)
        .ok_or_else(malformed)?
        .into_iter()
        .map(|part| op.parse_item(part))
        .collect()
}

pub fn format_set<'a, O: Operator>(op: &O, items: impl IntoIterator<Item = &'a O::Item>) -> String
where
    O::Item: 'a,
{
    let body: Vec<String> = items.into_iter().map(|x| op.format_item(x)).collect();
    format!("{{{}}}", body.join(","))
}
