//! On-disk catalog format: a single JSON document with a format marker,
//! parameter ranges, and one record per entry. Serialization is
//! deterministic, so serialize(parse(text)) reproduces the serializer's
//! output byte for byte. Parse errors carry line and column positions.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CatalogEntry, ExpectedInvariants, Params, TypeId};
use crate::pcgroup::presentation::{Generator, PcPresentation};

pub const FORMAT_NAME: &str = "pgroup-catalog";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranges {
    pub n_max: u32,
    pub m_max: u32,
    pub k_max: u32,
    pub r_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub format: String,
    pub version: u32,
    pub prime: u64,
    pub ranges: Ranges,
    pub entries: Vec<EntryRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub order_exp: u32,
    pub central: bool,
}

/// A presentation in dense-power, sparse-commutator form. A commutator
/// triple `(i, j, v)` with `i < j` records that conjugating generator j
/// past generator i contributes `v` to the derived coordinate; the
/// antisymmetric counterpart is implied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub prime: u64,
    pub generators: Vec<GeneratorRecord>,
    pub powers: Vec<Vec<u64>>,
    pub commutators: Vec<(usize, usize, u64)>,
    pub derived: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub type_id: String,
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub r: u32,
    pub expected: ExpectedInvariants,
    pub presentation: PresentationRecord,
    pub notes: String,
}

#[derive(Debug, Error)]
pub enum CatalogFormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported catalog format: {format} v{version}")]
    Format { format: String, version: u32 },
    #[error("entry {index}: {message}")]
    Entry { index: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PresentationRecord {
    pub fn from_presentation(pres: &PcPresentation) -> Self {
        let s = pres.num_gens();
        let generators = pres
            .gens()
            .iter()
            .map(|g| GeneratorRecord {
                name: g.name.clone(),
                order_exp: g.order_exp,
                central: g.central,
            })
            .collect();
        let powers = (0..s).map(|i| pres.power_relation(i).to_vec()).collect();
        let mut commutators = Vec::new();
        let table = pres.commutator_table();
        for i in 0..s {
            for j in i + 1..s {
                if table[i][j] != 0 {
                    commutators.push((i, j, table[i][j]));
                }
            }
        }
        PresentationRecord {
            prime: pres.prime(),
            generators,
            powers,
            commutators,
            derived: pres.derived_element().exps().to_vec(),
        }
    }

    pub fn to_presentation(&self) -> Result<PcPresentation, String> {
        let s = self.generators.len();
        let gens: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                order_exp: g.order_exp,
                central: g.central,
            })
            .collect();
        let mut comm = vec![vec![0u64; s]; s];
        for &(i, j, v) in &self.commutators {
            if i >= j || j >= s {
                return Err(format!("commutator triple ({i}, {j}, {v}) out of range"));
            }
            if v == 0 || v >= self.prime {
                return Err(format!("commutator value {v} outside 1..{}", self.prime));
            }
            comm[i][j] = v;
            comm[j][i] = self.prime - v;
        }
        let pres = PcPresentation::new(
            self.prime,
            gens,
            self.powers.clone(),
            comm,
            self.derived.clone(),
        )
        .map_err(|e| e.to_string())?;
        pres.consistency_check().map_err(|e| e.to_string())?;
        Ok(pres)
    }
}

impl EntryRecord {
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        EntryRecord {
            type_id: entry.type_id.to_string(),
            p: entry.params.p,
            n: entry.params.n,
            m: entry.params.m,
            k: entry.params.k,
            r: entry.params.r,
            expected: entry.expected.clone(),
            presentation: PresentationRecord::from_presentation(&entry.presentation),
            notes: String::new(),
        }
    }

    pub fn to_entry(&self) -> Result<CatalogEntry, String> {
        let type_id: TypeId = self.type_id.parse().map_err(|e| format!("{e}"))?;
        let presentation = self.presentation.to_presentation()?;
        Ok(CatalogEntry {
            type_id,
            params: Params { p: self.p, n: self.n, m: self.m, k: self.k, r: self.r },
            presentation,
            expected: self.expected.clone(),
        })
    }
}

/// Packages entries into a file document, sorted by type id then parameters.
pub fn catalog_file(prime: u64, ranges: Ranges, entries: &[CatalogEntry]) -> CatalogFile {
    let mut records: Vec<(TypeId, Params, EntryRecord)> = entries
        .iter()
        .map(|e| (e.type_id, e.params, EntryRecord::from_entry(e)))
        .collect();
    records.sort_by_key(|(t, p, _)| (*t, *p));
    CatalogFile {
        format: FORMAT_NAME.to_string(),
        version: FORMAT_VERSION,
        prime,
        ranges,
        entries: records.into_iter().map(|(_, _, r)| r).collect(),
    }
}

pub fn to_json(file: &CatalogFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("catalog serialization");
    text.push('\n');
    text
}

pub fn parse_json(text: &str) -> Result<CatalogFile, CatalogFormatError> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogFormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.format != FORMAT_NAME || file.version != FORMAT_VERSION {
        return Err(CatalogFormatError::Format { format: file.format, version: file.version });
    }
    Ok(file)
}

/// Reconstructs working entries from a parsed file, validating every
/// presentation.
pub fn entries_from_file(file: &CatalogFile) -> Result<Vec<CatalogEntry>, CatalogFormatError> {
    file.entries
        .iter()
        .enumerate()
        .map(|(index, rec)| {
            rec.to_entry().map_err(|message| CatalogFormatError::Entry { index, message })
        })
        .collect()
}

pub fn write_catalog(path: &Path, file: &CatalogFile) -> Result<(), CatalogFormatError> {
    std::fs::write(path, to_json(file))?;
    Ok(())
}

pub fn read_catalog(path: &Path) -> Result<CatalogFile, CatalogFormatError> {
    let text = std::fs::read_to_string(path)?;
    parse_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{admissible_entries, build_entry};

    fn sample_entries() -> Vec<CatalogEntry> {
        vec![
            build_entry(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
            build_entry(TypeId::T1_1, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
            build_entry(TypeId::T1_19, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
        ]
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
        let file = catalog_file(3, ranges, &sample_entries());
        let text = to_json(&file);
        let parsed = parse_json(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(to_json(&parsed), text);
    }

    #[test]
    fn entries_survive_reconstruction() {
        let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
        let entries = sample_entries();
        let file = catalog_file(3, ranges, &entries);
        let back = entries_from_file(&file).unwrap();
        assert_eq!(back.len(), entries.len());
        // File order is sorted; match back up by type id.
        for e in &entries {
            let twin = back.iter().find(|b| b.type_id == e.type_id).unwrap();
            assert_eq!(twin.params, e.params);
            assert_eq!(twin.presentation.order(), e.presentation.order());
            assert_eq!(twin.presentation.commutator_table(), e.presentation.commutator_table());
            assert_eq!(
                twin.presentation.derived_element(),
                e.presentation.derived_element()
            );
        }
    }

    #[test]
    fn entries_are_sorted_in_file() {
        let ranges = Ranges { n_max: 2, m_max: 1, k_max: 1, r_max: 2 };
        let entries = admissible_entries(3, 2, 1, 1, 2, None, 3u64.pow(6)).unwrap();
        let file = catalog_file(3, ranges, &entries);
        let keys: Vec<(TypeId, Params)> = file
            .entries
            .iter()
            .map(|r| {
                (
                    r.type_id.parse().unwrap(),
                    Params { p: r.p, n: r.n, m: r.m, k: r.k, r: r.r },
                )
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "{\n  \"format\": \"pgroup-catalog\",,\n}";
        match parse_json(bad) {
            Err(CatalogFormatError::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn foreign_formats_are_rejected() {
        let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
        let mut file = catalog_file(3, ranges, &sample_entries());
        file.version = 99;
        let text = to_json(&file);
        match parse_json(&text) {
            Err(CatalogFormatError::Format { version: 99, .. }) => {}
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn corrupt_commutator_triples_are_reported_per_entry() {
        let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
        let mut file = catalog_file(3, ranges, &sample_entries());
        file.entries[1].presentation.commutators[0].2 = 7;
        match entries_from_file(&file) {
            Err(CatalogFormatError::Entry { index: 1, message }) => {
                assert!(message.contains("outside"), "{message}");
            }
            other => panic!("expected entry error, got {other:?}"),
        }
    }
}
