//! Named knot diagrams, loaded from a JSON-lines table. Each line holds one
//! object with a `name`, a `pd` array of crossing quadruples, and an
//! optional count of crossing-free `unknots`. A bundled table covers the
//! low-crossing knots; `KNOTTABLE` may point at a replacement file.

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

const BUNDLED: &str = include_str!("table.jsonl");

#[derive(Debug, Clone)]
pub struct KnotTableEntry {
    pub name: String,
    pub diagram: LinkDiagram,
}

#[derive(Debug, Clone)]
pub struct KnotTable {
    entries: Vec<KnotTableEntry>,
    index: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    pd: Vec<[u32; 4]>,
    #[serde(default)]
    unknots: u32,
}

impl KnotTable {
    /// The table compiled into the library.
    pub fn bundled() -> &'static KnotTable {
        static TABLE: OnceLock<KnotTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            KnotTable::from_jsonl(BUNDLED).expect("bundled knot table is valid")
        })
    }

    /// The bundled table, or the file named by `KNOTTABLE` when set.
    pub fn from_env() -> Result<KnotTable> {
        match std::env::var_os("KNOTTABLE") {
            Some(path) => KnotTable::load(Path::new(&path)),
            None => Ok(KnotTable::bundled().clone()),
        }
    }

    pub fn load(path: &Path) -> Result<KnotTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|_| Error::FileNotFound(path.display().to_string()))?;
        KnotTable::from_jsonl(&text)
    }

    pub fn from_jsonl(text: &str) -> Result<KnotTable> {
        let mut entries = Vec::new();
        let mut index = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_nr = lineno + 1;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawEntry =
                serde_json::from_str(line).map_err(|e| Error::MalformedEntry {
                    line: line_nr,
                    msg: e.to_string(),
                })?;
            let diagram = LinkDiagram::from_quadruples(raw.pd, raw.unknots).map_err(|e| {
                Error::MalformedEntry {
                    line: line_nr,
                    msg: e.to_string(),
                }
            })?;
            if !diagram.is_knot() {
                return Err(Error::MalformedEntry {
                    line: line_nr,
                    msg: format!(
                        "entry {} has {} components, expected 1",
                        raw.name,
                        diagram.component_count()
                    ),
                });
            }
            if index.contains_key(&raw.name) {
                return Err(Error::DuplicateName(raw.name));
            }
            index.insert(raw.name.clone(), entries.len());
            entries.push(KnotTableEntry {
                name: raw.name,
                diagram,
            });
        }
        Ok(KnotTable { entries, index })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn entries(&self) -> &[KnotTableEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&KnotTableEntry> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownKnot(name.to_string()))
    }

    /// Look up a possibly composite name. Parts separated by `#` are
    /// connected-summed, and a part may carry a `^i` repetition count, so
    /// `3_1#4_1^2` is the trefoil summed with two figure-eights.
    pub fn resolve(&self, name: &str) -> Result<LinkDiagram> {
        let mut acc = LinkDiagram::unknot();
        for part in name.split('#') {
            let part = part.trim();
            let (base, copies) = match part.split_once('^') {
                Some((b, exp)) => {
                    let copies: u32 = exp.trim().parse().map_err(|_| {
                        Error::UnknownKnot(format!("bad repetition count in {part:?}"))
                    })?;
                    (b.trim(), copies)
                }
                None => (part, 1),
            };
            let entry = self.get(base)?;
            for _ in 0..copies {
                acc = acc.connected_sum(&entry.diagram)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_has_the_low_crossing_knots() {
        let t = KnotTable::bundled();
        for name in ["unknot", "0_1", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"] {
            let entry = t.get(name).unwrap();
            assert!(entry.diagram.is_knot(), "{name} is not a knot");
        }
        assert_eq!(t.get("3_1").unwrap().diagram.num_crossings(), 3);
        assert_eq!(t.get("6_3").unwrap().diagram.num_crossings(), 6);
        assert!(matches!(t.get("7_1"), Err(Error::UnknownKnot(_))));
    }

    #[test]
    fn composite_names_resolve_through_connected_sums() {
        let t = KnotTable::bundled();
        let d = t.resolve("3_1#4_1").unwrap();
        assert_eq!(d.num_crossings(), 7);
        assert!(d.is_knot());
        let p = t.resolve("4_1^2").unwrap();
        assert_eq!(p.num_crossings(), 8);
        assert_eq!(t.resolve("unknot").unwrap(), LinkDiagram::unknot());
        assert_eq!(t.resolve("3_1^0").unwrap(), LinkDiagram::unknot());
        assert!(t.resolve("3_1#9_99").is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            KnotTable::from_jsonl("{\"name\":\"k\"}"),
            Err(Error::MalformedEntry { line: 1, .. })
        ));
        assert!(matches!(
            KnotTable::from_jsonl("{\"name\":\"k\",\"pd\":[[1,2,3,4]]}"),
            Err(Error::MalformedEntry { line: 1, .. })
        ));
        let dup = "{\"name\":\"k\",\"pd\":[],\"unknots\":1}\n{\"name\":\"k\",\"pd\":[],\"unknots\":1}";
        assert!(matches!(
            KnotTable::from_jsonl(dup),
            Err(Error::DuplicateName(_))
        ));
        // A two-component entry is invalid even when the quadruples are fine.
        let link = "{\"name\":\"hopf\",\"pd\":[[1,3,4,2],[3,1,2,4]]}";
        assert!(matches!(
            KnotTable::from_jsonl(link),
            Err(Error::MalformedEntry { line: 1, .. })
        ));
        assert!(matches!(
            KnotTable::load(Path::new("/nonexistent/table.jsonl")),
            Err(Error::FileNotFound(_))
        ));
    }
}
