//! Published reference data: value distributions of biconnected graphs for
//! n = 3..11, the complete and complete bipartite tables, and a few named
//! graphs.
//!
//! Text format: `[section]` headers, `#` comments, whitespace-separated
//! integer rows.
//!
//! ```text
//! [distribution]        n m value count
//! [max_biconnected]     n value
//! [complete]            n value
//! [complete_bipartite]  p q value
//! [named]               name value
//! [totals]              n m count
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use super::Distribution;
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/reference.txt");

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReferenceTable {
    pub distribution: Distribution,
    pub max_biconnected: BTreeMap<usize, u16>,
    pub complete: BTreeMap<usize, u16>,
    pub complete_bipartite: BTreeMap<(usize, usize), u16>,
    pub named: BTreeMap<String, u16>,
    pub totals: BTreeMap<(usize, usize), u64>,
}

impl ReferenceTable {
    /// The data file compiled into the crate.
    pub fn bundled() -> ReferenceTable {
        ReferenceTable::parse(BUNDLED).expect("bundled reference data parses")
    }

    pub fn load(path: &Path) -> Result<ReferenceTable> {
        ReferenceTable::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<ReferenceTable> {
        let mut table = ReferenceTable::default();
        let mut section = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.to_string();
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let bad = |reason: String| Error::Reference { line, reason };
            let num = |idx: usize| -> Result<u64> {
                fields
                    .get(idx)
                    .ok_or_else(|| bad(format!("missing field {}", idx + 1)))?
                    .parse::<u64>()
                    .map_err(|e| bad(format!("field {}: {e}", idx + 1)))
            };
            let arity = |k: usize| {
                if fields.len() == k {
                    Ok(())
                } else {
                    Err(bad(format!("expected {k} fields, found {}", fields.len())))
                }
            };
            let value =
                |idx: usize| -> Result<u16> { u16::try_from(num(idx)?).map_err(|_| bad("value out of range".into())) };
            match section.as_str() {
                "distribution" => {
                    arity(4)?;
                    let (n, m, v, c) = (num(0)? as usize, num(1)? as usize, value(2)?, num(3)?);
                    if table.distribution.get(n, m, v) != 0 {
                        return Err(bad(format!("duplicate row {n} {m} {v}")));
                    }
                    if c == 0 {
                        return Err(bad("zero count".into()));
                    }
                    table.distribution.add(n, m, v, c);
                }
                "max_biconnected" => {
                    arity(2)?;
                    table.max_biconnected.insert(num(0)? as usize, value(1)?);
                }
                "complete" => {
                    arity(2)?;
                    table.complete.insert(num(0)? as usize, value(1)?);
                }
                "complete_bipartite" => {
                    arity(3)?;
                    table.complete_bipartite.insert((num(0)? as usize, num(1)? as usize), value(2)?);
                }
                "named" => {
                    arity(2)?;
                    table.named.insert(fields[0].to_string(), value(1)?);
                }
                "totals" => {
                    arity(3)?;
                    table.totals.insert((num(0)? as usize, num(1)? as usize), num(2)?);
                }
                "" => return Err(bad("row outside any section".into())),
                other => return Err(bad(format!("unknown section [{other}]"))),
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_is_consistent() {
        let r = ReferenceTable::bundled();
        let totals = r.distribution.totals();
        assert_eq!(totals[&(10, 23)], r.totals[&(10, 23)]);
        assert_eq!(r.totals[&(10, 23)], 1224430);
        let per_n: BTreeMap<usize, u64> = totals.iter().fold(BTreeMap::new(), |mut acc, (&(n, _), &c)| {
            *acc.entry(n).or_default() += c;
            acc
        });
        // non-isomorphic biconnected graphs on n vertices
        let known = [1u64, 3, 10, 56, 468, 7123, 194066, 9743542, 900969091];
        for (i, want) in known.iter().enumerate() {
            assert_eq!(per_n[&(i + 3)], *want);
        }
        // the printed maxima and the printed distributions disagree at three sizes
        let max = r.distribution.max_value_per_n();
        let disagree: Vec<usize> = (3..=11).filter(|n| max[n] != r.max_biconnected[n]).collect();
        assert_eq!(disagree, [7, 9, 10]);
        assert_eq!(r.distribution.get(7, 11, 2), 66);
        assert_eq!(r.complete[&8], 2);
        assert_eq!(r.complete_bipartite[&(4, 4)], 2);
        assert_eq!(r.named["petersen"], 1);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = ReferenceTable::parse("[distribution]\n3 3 2\n").unwrap_err();
        assert!(matches!(err, Error::Reference { line: 2, .. }));
        assert!(ReferenceTable::parse("3 3 2 1\n").is_err());
        assert!(ReferenceTable::parse("[nope]\n1 2\n").is_err());
        assert!(ReferenceTable::parse("[distribution]\n3 3 2 1\n3 3 2 1\n").is_err());
    }
}
