//! Named group catalog, loaded from the data file shipped in-repo.
//! Line grammar: `name | degree | gens` with `;`-separated generators in
//! 1-based cycle notation; `#` starts a comment.

use super::{Perm, PermGroup};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const CATALOG_TEXT: &str = include_str!("../../data/group_catalog.txt");

struct Entry {
    degree: usize,
    generators: Vec<String>,
}

fn entries() -> &'static BTreeMap<String, Entry> {
    static ENTRIES: OnceLock<BTreeMap<String, Entry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        parse_catalog(CATALOG_TEXT).expect("the shipped catalog parses")
    })
}

fn parse_catalog(text: &str) -> Result<BTreeMap<String, Entry>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "catalog line {}: expected 'name | degree | gens'",
                lineno + 1
            )));
        }
        let degree: usize = parts[1].parse().map_err(|_| {
            Error::InvalidInput(format!("catalog line {}: bad degree", lineno + 1))
        })?;
        let generators = parts[2].split(';').map(|s| s.trim().to_string()).collect();
        out.insert(parts[0].to_string(), Entry { degree, generators });
    }
    Ok(out)
}

/// Names available in the catalog, sorted.
pub fn catalog_names() -> Vec<&'static str> {
    entries().keys().map(String::as_str).collect()
}

/// Materializes a catalog group by name.
pub fn catalog_group(name: &str) -> Result<PermGroup> {
    let entry = entries().get(name).ok_or_else(|| {
        Error::InvalidInput(format!(
            "unknown group '{name}'; known: {}",
            catalog_names().join(", ")
        ))
    })?;
    let gens = entry
        .generators
        .iter()
        .map(|g| Perm::parse_cycles(g, entry.degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::close(entry.degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        for (name, order) in [
            ("S3", 6),
            ("S4", 24),
            ("S5", 120),
            ("S6", 720),
            ("A4", 12),
            ("A5", 60),
            ("D3", 6),
            ("D4", 8),
            ("D5", 10),
            ("D6", 12),
            ("D7", 14),
            ("D8", 16),
            ("V4", 4),
            ("Z6", 6),
        ] {
            assert_eq!(catalog_group(name).unwrap().order(), order, "{name}");
        }
        assert!(catalog_group("M11").is_err());
    }
}
