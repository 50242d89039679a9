//! Domain types and essay CSV ingestion.
//!
//! An essay carries an opaque id, its full text, and (when labeled) six
//! target scores on the half-point grid 1.0, 1.5, ..., 5.0.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::emb1::FeatureGroup;
use crate::error::{Error, Result};

/// The six scored dimensions, in canonical column order.
pub const TARGET_NAMES: [&str; 6] =
    ["cohesion", "syntax", "vocabulary", "phraseology", "grammar", "conventions"];

pub const GRID_MIN: f64 = 1.0;
pub const GRID_MAX: f64 = 5.0;
/// Number of distinct half-point grid values between 1.0 and 5.0.
pub const GRID_VALUES: usize = 9;

/// True when `v` lies exactly on the half-point grid.
pub fn on_grid(v: f64) -> bool {
    if !(GRID_MIN..=GRID_MAX).contains(&v) {
        return false;
    }
    let doubled = v * 2.0;
    doubled == doubled.round()
}

/// Grid slot in `0..GRID_VALUES` for an on-grid value.
pub fn grid_bin(v: f64) -> usize {
    debug_assert!(on_grid(v));
    ((v - GRID_MIN) / 0.5).round() as usize
}

/// Six named scores. Gold labels sit on the half-point grid; model outputs
/// may be any real in [1, 5].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector {
    pub cohesion: f64,
    pub syntax: f64,
    pub vocabulary: f64,
    pub phraseology: f64,
    pub grammar: f64,
    pub conventions: f64,
}

impl ScoreVector {
    pub fn from_array(a: [f64; 6]) -> Self {
        ScoreVector {
            cohesion: a[0],
            syntax: a[1],
            vocabulary: a[2],
            phraseology: a[3],
            grammar: a[4],
            conventions: a[5],
        }
    }

    pub fn splat(v: f64) -> Self {
        ScoreVector::from_array([v; 6])
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.cohesion, self.syntax, self.vocabulary, self.phraseology, self.grammar, self.conventions]
    }

    pub fn get(&self, target: usize) -> f64 {
        self.as_array()[target]
    }

    pub fn is_on_grid(&self) -> bool {
        self.as_array().iter().all(|&v| on_grid(v))
    }
}

/// One essay. `targets` is absent for unlabeled pools.
#[derive(Debug, Clone, PartialEq)]
pub struct EssayRecord {
    pub id: String,
    pub full_text: String,
    pub targets: Option<ScoreVector>,
}

/// An ordered essay collection plus its embedding groups. Feature-group row
/// `i` always describes `records[i]`; the constructor enforces it.
#[derive(Debug, Clone)]
pub struct Dataset {
    records: Vec<EssayRecord>,
    feature_groups: Vec<FeatureGroup>,
}

impl Dataset {
    pub fn new(records: Vec<EssayRecord>, feature_groups: Vec<FeatureGroup>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for r in &records {
            if !seen.insert(r.id.clone()) {
                return Err(Error::DuplicateId(r.id.clone()));
            }
        }
        for g in &feature_groups {
            if g.matrix.rows() != records.len() {
                return Err(Error::DimensionMismatch {
                    expected: format!("{} feature rows", records.len()),
                    found: format!("{} rows in group {}", g.matrix.rows(), g.key()),
                });
            }
        }
        Ok(Dataset { records, feature_groups })
    }

    pub fn records(&self) -> &[EssayRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn feature_groups(&self) -> &[FeatureGroup] {
        &self.feature_groups
    }

    pub fn group(&self, model_id: &str, layer_index: u32) -> Option<&FeatureGroup> {
        self.feature_groups
            .iter()
            .find(|g| g.model_id == model_id && g.layer_index == layer_index)
    }

    /// Gold targets in record order; error if any record is unlabeled.
    pub fn targets(&self) -> Result<Vec<ScoreVector>> {
        self.records
            .iter()
            .map(|r| {
                r.targets.ok_or_else(|| {
                    Error::InvalidArgument(format!("record {} has no labels", r.id))
                })
            })
            .collect()
    }

    pub fn ids(&self) -> Vec<String> {
        self.records.iter().map(|r| r.id.clone()).collect()
    }
}

const LABELED_HEADER: [&str; 8] = [
    "text_id", "full_text", "cohesion", "syntax", "vocabulary", "phraseology", "grammar",
    "conventions",
];

/// Load essays from a CSV file.
///
/// With `has_labels` the file must carry the full eight-column header; the
/// six label columns are validated against the half-point grid. Without it
/// only `text_id,full_text` is required. A missing text cell becomes the
/// empty string; a missing label cell is an error.
pub fn load_essays(path: &Path, has_labels: bool) -> Result<Vec<EssayRecord>> {
    let file = File::open(path)?;
    load_essays_from_reader(file, has_labels)
}

pub fn load_essays_from_reader<R: Read>(reader: R, has_labels: bool) -> Result<Vec<EssayRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);

    let headers = rdr.headers().map_err(csv_error)?.clone();
    let expected: &[&str] = if has_labels { &LABELED_HEADER } else { &LABELED_HEADER[..2] };
    let found: Vec<&str> = headers.iter().collect();
    if found != expected {
        return Err(Error::MalformedCsv {
            line: 1,
            message: format!("header {:?}, expected {:?}", found.join(","), expected.join(",")),
        });
    }

    let mut records = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != expected.len() {
            return Err(Error::MalformedCsv {
                line,
                message: format!("{} fields, expected {}", row.len(), expected.len()),
            });
        }
        let id = row.get(0).unwrap_or("").to_string();
        if id.is_empty() {
            return Err(Error::MalformedCsv { line, message: "empty text_id".into() });
        }
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId(id));
        }
        let full_text = row.get(1).unwrap_or("").to_string();
        let targets = if has_labels {
            let mut values = [0.0f64; 6];
            for (t, name) in TARGET_NAMES.iter().enumerate() {
                let raw = row.get(2 + t).unwrap_or("");
                let value: f64 = raw.trim().parse().map_err(|_| Error::MalformedCsv {
                    line,
                    message: format!("unparseable {name} value {raw:?} for id {id}"),
                })?;
                if !on_grid(value) {
                    return Err(Error::BadLabel { id: id.clone(), column: name.to_string(), value });
                }
                values[t] = value;
            }
            Some(ScoreVector::from_array(values))
        } else {
            None
        };
        records.push(EssayRecord { id, full_text, targets });
    }
    Ok(records)
}

/// Write essays back out in the canonical schema. Labels are formatted with
/// one decimal so a written grid file reloads exactly.
pub fn write_essays(records: &[EssayRecord], path: &Path, has_labels: bool) -> Result<()> {
    let mut out = Vec::new();
    {
        let mut wtr = csv::Writer::from_writer(&mut out);
        let expected: &[&str] = if has_labels { &LABELED_HEADER } else { &LABELED_HEADER[..2] };
        wtr.write_record(expected).map_err(csv_error)?;
        for r in records {
            let mut fields = vec![r.id.clone(), r.full_text.clone()];
            if has_labels {
                let t = r.targets.ok_or_else(|| {
                    Error::InvalidArgument(format!("record {} has no labels to write", r.id))
                })?;
                fields.extend(t.as_array().iter().map(|v| format!("{v:.1}")));
            }
            wtr.write_record(&fields).map_err(csv_error)?;
        }
        wtr.flush()?;
    }
    let mut file = File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let line = match e.position() {
        Some(p) => p.line(),
        None => 0,
    };
    Error::MalformedCsv { line, message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(input: &str, has_labels: bool) -> Result<Vec<EssayRecord>> {
        load_essays_from_reader(input.as_bytes(), has_labels)
    }

    const HEADER: &str = "text_id,full_text,cohesion,syntax,vocabulary,phraseology,grammar,conventions\n";

    #[test]
    fn parses_labeled_row() {
        let rows = parse(
            &format!("{HEADER}e1,\"Good essay.\",3.0,3.5,4.0,3.0,3.5,3.0\n"),
            true,
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].id, "e1");
        assert_eq!(rows[0].full_text, "Good essay.");
        let t = rows[0].targets.unwrap();
        assert_eq!(t.cohesion, 3.0);
        assert_eq!(t.syntax, 3.5);
        assert_eq!(t.vocabulary, 4.0);
    }

    #[test]
    fn missing_text_becomes_empty_string() {
        let rows = parse(&format!("{HEADER}e2,,3.0,3.0,3.0,3.0,3.0,3.0\n"), true).unwrap();
        assert_eq!(rows[0].full_text, "");
    }

    #[test]
    fn off_grid_label_is_rejected() {
        let err = parse(&format!("{HEADER}e3,text,3.0,3.0,3.0,3.0,3.25,3.0\n"), true).unwrap_err();
        match err {
            Error::BadLabel { id, column, value } => {
                assert_eq!(id, "e3");
                assert_eq!(column, "grammar");
                assert_eq!(value, 3.25);
            }
            other => panic!("expected BadLabel, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_label_is_rejected() {
        let err = parse(&format!("{HEADER}e4,text,5.5,3.0,3.0,3.0,3.0,3.0\n"), true).unwrap_err();
        assert!(matches!(err, Error::BadLabel { .. }));
    }

    #[test]
    fn malformed_row_names_line() {
        let err = parse(&format!("{HEADER}e5,text,3.0\n"), true).unwrap_err();
        match err {
            Error::MalformedCsv { line, .. } => assert_eq!(line, 2),
            other => panic!("expected MalformedCsv, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let err = parse(
            &format!("{HEADER}e1,a,3.0,3.0,3.0,3.0,3.0,3.0\ne1,b,3.0,3.0,3.0,3.0,3.0,3.0\n"),
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
    }

    #[test]
    fn unlabeled_schema_is_two_columns() {
        let rows = parse("text_id,full_text\np1,\"Some, text\"\n", false).unwrap();
        assert_eq!(rows[0].full_text, "Some, text");
        assert!(rows[0].targets.is_none());
    }

    #[test]
    fn header_mismatch_is_rejected() {
        assert!(parse("id,text\np1,x\n", false).is_err());
    }

    #[test]
    fn write_then_load_is_fixed_point() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("essays.csv");
        let records = vec![
            EssayRecord {
                id: "a".into(),
                full_text: "Line with \"quotes\", commas\nand a newline.".into(),
                targets: Some(ScoreVector::splat(2.5)),
            },
            EssayRecord { id: "b".into(), full_text: String::new(), targets: Some(ScoreVector::splat(4.0)) },
        ];
        write_essays(&records, &path, true).unwrap();
        let reloaded = load_essays(&path, true).unwrap();
        assert_eq!(records, reloaded);
        write_essays(&reloaded, &path, true).unwrap();
        let again = load_essays(&path, true).unwrap();
        assert_eq!(reloaded, again);
    }

    #[test]
    fn grid_helpers() {
        assert!(on_grid(1.0));
        assert!(on_grid(4.5));
        assert!(!on_grid(3.25));
        assert!(!on_grid(5.5));
        assert_eq!(grid_bin(1.0), 0);
        assert_eq!(grid_bin(5.0), 8);
        assert_eq!(grid_bin(3.0), 4);
    }
}
