//! Brace catalogs and their JSON-lines file format.
//!
//! Each line is one brace in the brace JSON format plus metadata:
//! `{"id", "source", "add_group", "mul_group", "iso_class"?, "order",
//! "add_table", "mul_table", "labels"?}`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::brace::SkewBrace;
use crate::constructors::{example_c4c2, example_nonnilpotent_type};
use crate::enumerate::{enumerate_braces, Dedup};
use crate::error::{Error, Result};
use crate::group::{identify, small_groups, FiniteGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Holomorph,
    Derivation,
    Fixture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub source: Source,
    pub add_group: String,
    pub mul_group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_class: Option<usize>,
    #[serde(flatten)]
    pub brace: SkewBrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceCatalog {
    pub entries: Vec<CatalogEntry>,
    pub dedup: Dedup,
}

/// Name of a group for catalog metadata.
pub fn group_name(g: &FiniteGroup) -> String {
    identify(g).map_or_else(|| format!("order-{}", g.order()), str::to_string)
}

impl BraceCatalog {
    /// All braces on `add`, with ids `<add_name>#<index>`.
    pub fn enumerate(add_name: &str, add: &FiniteGroup, dedup: Dedup, cap: usize) -> Result<Self> {
        let braces = enumerate_braces(add, dedup, cap)?;
        let entries = braces
            .into_iter()
            .enumerate()
            .map(|(i, brace)| CatalogEntry {
                id: format!("{add_name}#{i}"),
                source: Source::Holomorph,
                add_group: add_name.to_string(),
                mul_group: group_name(brace.multiplicative()),
                iso_class: (dedup == Dedup::BraceIsomorphism).then_some(i),
                brace,
            })
            .collect();
        Ok(BraceCatalog { entries, dedup })
    }

    /// The two worked fixtures.
    pub fn fixtures() -> Self {
        let entries = [
            ("nonnilpotent-type", example_nonnilpotent_type()),
            ("c4c2-d8", example_c4c2()),
        ]
        .into_iter()
        .map(|(id, brace)| CatalogEntry {
            id: id.to_string(),
            source: Source::Fixture,
            add_group: group_name(brace.additive()),
            mul_group: group_name(brace.multiplicative()),
            iso_class: None,
            brace,
        })
        .collect();
        BraceCatalog {
            entries,
            dedup: Dedup::None,
        }
    }

    /// Every skew brace of order ≤ `max_order` (at most 8) up to isomorphism.
    pub fn small_corpus(max_order: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for (name, g) in small_groups()
            .into_iter()
            .filter(|(_, g)| g.order() <= max_order)
        {
            entries.extend(Self::enumerate(name, &g, Dedup::BraceIsomorphism, 8)?.entries);
        }
        Ok(BraceCatalog {
            entries,
            dedup: Dedup::BraceIsomorphism,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for entry in &self.entries {
            serde_json::to_writer(&mut out, entry)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }
}

/// Reads a JSON-lines catalog. Blank lines are skipped; errors carry the
/// 1-based line number.
pub fn read_jsonl(input: impl BufRead) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::MalformedEntry {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line).map_err(|e| Error::MalformedEntry {
            line: i + 1,
            message: e.to_string(),
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    #[test]
    fn c2_catalog_has_one_entry() {
        let c = BraceCatalog::enumerate(
            "C2",
            &named_group("C2").unwrap(),
            Dedup::BraceIsomorphism,
            8,
        )
        .unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.entries[0].id, "C2#0");
        assert_eq!(c.entries[0].mul_group, "C2");
    }

    #[test]
    fn jsonl_roundtrip() {
        let c = BraceCatalog::fixtures();
        let text = c.to_jsonl();
        assert_eq!(text.lines().count(), 2);
        let first = text.lines().next().unwrap();
        assert!(first.starts_with(r#"{"id":"nonnilpotent-type","source":"fixture","add_group":"S3","mul_group":"C6","order":6,"#));
        let back = read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(back, c.entries);
        assert_eq!(back[1].brace.label(7), "3a+b");
    }

    #[test]
    fn malformed_lines_are_reported() {
        let good = BraceCatalog::fixtures().to_jsonl();
        let bad = format!("{}\n\n{{\"id\": 3}}\n", good.lines().next().unwrap());
        match read_jsonl(bad.as_bytes()) {
            Err(Error::MalformedEntry { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        // a table that is not a brace
        let not_brace = r#"{"id":"x","source":"fixture","add_group":"C2","mul_group":"C2","order":2,"add_table":[[0,1],[1,0]],"mul_table":[[0,1],[1,1]]}"#;
        assert!(matches!(
            read_jsonl(not_brace.as_bytes()),
            Err(Error::MalformedEntry { line: 1, .. })
        ));
        assert!(read_jsonl("".as_bytes()).unwrap().is_empty());
    }
}
