//! JSON persistence and DOT export.
//!
//! An algebra file is either `{"kind":"poset","points":N,"leq":[[i,j],...]}`,
//! read as the downset algebra of the poset, or
//! `{"kind":"lattice","size":N,"leq":[[i,j],...]}` with an optional
//! `"labels"` array. `leq` lists the full order relation; reflexive pairs may
//! be omitted but the relation must already be transitive.
//!
//! A corpus directory holds one such file per entry plus `index.json`:
//! `{"entries":[{"id":..,"file":..,"size":..,"y":..,"centrally_supplemented":..,"fsi":..}]}`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{CorpusEntry, Metadata};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, HeytingAlgebra};
use crate::order::Poset;

#[derive(Serialize, Deserialize)]
struct IndexEntry {
    id: String,
    file: String,
    #[serde(flatten)]
    meta: Metadata,
}

#[derive(Serialize, Deserialize)]
struct Index {
    entries: Vec<IndexEntry>,
}

fn format_err(file: &Path, field: &str, msg: impl Into<String>) -> Error {
    Error::Format {
        file: file.to_path_buf(),
        field: field.to_string(),
        msg: msg.into(),
    }
}

fn relation_json(p: &Poset) -> Value {
    json!(p.pairs().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>())
}

/// The poset form of an entry's source.
pub fn write_poset_json(p: &Poset) -> String {
    json!({"kind": "poset", "points": p.size(), "leq": relation_json(p)}).to_string()
}

/// The lattice form, with element labels.
pub fn write_algebra_json(a: &FiniteLattice) -> String {
    json!({
        "kind": "lattice",
        "size": a.size(),
        "leq": relation_json(a.order()),
        "labels": a.labels(),
    })
    .to_string()
}

fn read_relation(file: &Path, v: &Value, n: usize) -> Result<Poset> {
    let pairs = v
        .get("leq")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err(file, "leq", "missing or not an array"))?;
    let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
    for (k, pair) in pairs.iter().enumerate() {
        let ij = pair
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
            .ok_or_else(|| {
                format_err(file, "leq", format!("entry {k} is not a pair of indices"))
            })?;
        if ij.0 >= n || ij.1 >= n {
            return Err(format_err(
                file,
                "leq",
                format!("entry {k} is out of range"),
            ));
        }
        up[ij.0].insert(ij.1);
    }
    for i in 0..n {
        for j in up[i].iter() {
            if !up[j].is_subset(&up[i]) {
                let k = up[j].iter().find(|&k| !up[i].contains(k)).unwrap_or(j);
                return Err(format_err(
                    file,
                    "leq",
                    format!("not transitive: {i} ≤ {j} ≤ {k} but not {i} ≤ {k}"),
                ));
            }
        }
    }
    Poset::from_up_rows(up).map_err(|e| format_err(file, "leq", e.to_string()))
}

fn read_count(file: &Path, v: &Value, field: &str) -> Result<usize> {
    let n = v
        .get(field)
        .and_then(Value::as_u64)
        .ok_or_else(|| format_err(file, field, "missing or not a non-negative integer"))?
        as usize;
    if n == 0 {
        return Err(format_err(file, field, "must be positive"));
    }
    Ok(n)
}

/// Parses one algebra file. `file` is used for error messages and as the
/// default id.
pub fn parse_algebra_json(text: &str, file: &Path) -> Result<CorpusEntry> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| format_err(file, "<document>", e.to_string()))?;
    let id = v
        .get("id")
        .and_then(Value::as_str)
        .map(str::to_string)
        .unwrap_or_else(|| {
            file.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        });
    match v.get("kind").and_then(Value::as_str) {
        Some("poset") => {
            let n = read_count(file, &v, "points")?;
            let p = read_relation(file, &v, n)?;
            CorpusEntry::from_poset(id, p)
        }
        Some("lattice") => {
            let n = read_count(file, &v, "size")?;
            let p = read_relation(file, &v, n)?;
            let labels = match v.get("labels") {
                None => None,
                Some(Value::Array(ls)) if ls.len() == n => Some(
                    ls.iter()
                        .map(|l| l.as_str().map(str::to_string))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| format_err(file, "labels", "labels must be strings"))?,
                ),
                Some(_) => return Err(format_err(file, "labels", format!("expected {n} strings"))),
            };
            let (alg, _) = HeytingAlgebra::from_poset(&p, labels)?;
            CorpusEntry::from_algebra(id, alg)
        }
        Some(other) => Err(format_err(file, "kind", format!("unknown kind {other:?}"))),
        None => Err(format_err(file, "kind", "missing")),
    }
}

pub fn load_algebra_file(path: &Path) -> Result<CorpusEntry> {
    let text = fs::read_to_string(path)?;
    parse_algebra_json(&text, path)
}

/// Writes one poset file per entry and the `index.json` manifest.
pub fn save(dir: &Path, entries: &[CorpusEntry]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut index = Index {
        entries: Vec::new(),
    };
    for e in entries {
        let file = format!("{}.json", sanitize(&e.id));
        let mut doc: Value = serde_json::from_str(&write_poset_json(&e.poset)).expect("valid json");
        doc["id"] = json!(e.id);
        fs::write(dir.join(&file), doc.to_string())?;
        index.entries.push(IndexEntry {
            id: e.id.clone(),
            file,
            meta: e.meta.clone(),
        });
    }
    let text = serde_json::to_string_pretty(&index).expect("index serializes");
    fs::write(dir.join("index.json"), text)?;
    Ok(())
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Reads a corpus directory, recomputing every entry's metadata and
/// rejecting any disagreement with the manifest.
pub fn load(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let index_path: PathBuf = dir.join("index.json");
    let text = fs::read_to_string(&index_path)?;
    let index: Index = serde_json::from_str(&text)
        .map_err(|e| format_err(&index_path, "entries", e.to_string()))?;
    let mut out = Vec::with_capacity(index.entries.len());
    for ie in index.entries {
        let path = dir.join(&ie.file);
        let mut entry = load_algebra_file(&path)?;
        entry.id = ie.id;
        let m = &entry.meta;
        let checks = [
            ("size", m.size == ie.meta.size),
            ("y", m.y == ie.meta.y),
            (
                "centrally_supplemented",
                m.centrally_supplemented == ie.meta.centrally_supplemented,
            ),
            ("fsi", m.fsi == ie.meta.fsi),
        ];
        if let Some((field, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format_err(
                &index_path,
                field,
                format!("manifest disagrees for {}", entry.id),
            ));
        }
        out.push(entry);
    }
    Ok(out)
}

/// Hasse diagram in DOT, bottom at the bottom.
pub fn to_dot(a: &FiniteLattice, name: &str) -> String {
    let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", name.replace('"', "'"));
    for x in a.elements() {
        s.push_str(&format!(
            "  n{x} [label=\"{}\"];\n",
            a.label(x).replace('"', "'")
        ));
    }
    for (x, y) in a.order().cover_pairs() {
        s.push_str(&format!("  n{x} -> n{y};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fixture_entries, generate};
    use crate::iso::is_isomorphic;

    #[test]
    fn round_trip_fixtures() {
        let dir = tempfile::tempdir().unwrap();
        let entries = fixture_entries().unwrap();
        save(dir.path(), &entries).unwrap();
        let back = load(dir.path()).unwrap();
        assert_eq!(back.len(), entries.len());
        for (a, b) in entries.iter().zip(&back) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.meta, b.meta);
            assert!(is_isomorphic(a.algebra.order(), b.algebra.order()));
        }
    }

    #[test]
    fn round_trip_small_corpus() {
        let dir = tempfile::tempdir().unwrap();
        save(dir.path(), &generate(4).unwrap()).unwrap();
        assert_eq!(load(dir.path()).unwrap().len(), 24);
    }

    #[test]
    fn non_transitive_relation_is_rejected() {
        let text = r#"{"kind":"poset","points":3,"leq":[[0,1],[1,2]]}"#;
        let err = parse_algebra_json(text, Path::new("bad.json")).unwrap_err();
        assert!(matches!(err, Error::Format { ref field, .. } if field == "leq"));
    }

    #[test]
    fn lattice_file_round_trip_keeps_labels() {
        let a = crate::corpus::fixtures::l5();
        let text = write_algebra_json(&a);
        let e = parse_algebra_json(&text, Path::new("L5.json")).unwrap();
        assert_eq!(e.id, "L5");
        assert_eq!(e.algebra.labels(), a.labels());
    }

    #[test]
    fn unknown_kind_and_bad_size() {
        let err = parse_algebra_json(r#"{"kind":"graph"}"#, Path::new("x.json")).unwrap_err();
        assert!(matches!(err, Error::Format { ref field, .. } if field == "kind"));
        let err =
            parse_algebra_json(r#"{"kind":"lattice","leq":[]}"#, Path::new("x.json")).unwrap_err();
        assert!(matches!(err, Error::Format { ref field, .. } if field == "size"));
    }

    #[test]
    fn dot_lists_covers() {
        let dot = to_dot(&crate::corpus::fixtures::chain(3), "C3");
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
    }
}
