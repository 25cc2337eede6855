//! Embedded classification tables, labelling of computed records, diffing and
//! table serialization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::enumerator::SolutionRecord;
use crate::error::{Error, Result};
use crate::ray_constraints::{RaySpec, RayType};

const EMBEDDED: &str = include_str!("../data/ground_truth.json");

/// Per-ray invariants recorded in a table row; absent fields are not compared.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayInvariants {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l3: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_delta: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_bidegree: Option<[i64; 2]>,
}

impl RayInvariants {
    /// `(name, value)` for every present field.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let scalar = [
            ("r", self.r),
            ("l3", self.l3),
            ("deg_b", self.deg_b),
            ("genus", self.genus),
            ("deg_delta", self.deg_delta),
            ("d2", self.d2),
            ("e", self.e),
        ];
        let mut out: Vec<(&'static str, String)> =
            scalar.into_iter().filter_map(|(name, v)| v.map(|v| (name, v.to_string()))).collect();
        if let Some([a, b]) = self.delta_bidegree {
            out.push(("delta_bidegree", format!("({a},{b})")));
        }
        out
    }
}

impl From<&RaySpec> for RayInvariants {
    fn from(s: &RaySpec) -> Self {
        Self {
            r: s.r,
            l3: s.l3,
            deg_b: s.deg_b,
            genus: s.genus,
            deg_delta: s.deg_delta,
            d2: s.d2,
            e: s.e,
            delta_bidegree: s.delta_bidegree,
        }
    }
}

/// One row of a classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table_id: String,
    pub rho: usize,
    pub kx3: i64,
    pub ray_types: Vec<RayType>,
    /// Aligned with `ray_types`.
    pub invariants: Vec<RayInvariants>,
    pub descriptions: Vec<String>,
    pub primitive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_note: Option<String>,
    /// Source row of the transcription.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

/// Parses and validates a JSON table.
pub fn parse_ground_truth(json: &str) -> Result<Vec<TableRow>> {
    let rows: Vec<TableRow> = serde_json::from_str(json).map_err(|e| Error::GroundTruth(e.to_string()))?;
    validate_rows(&rows)?;
    Ok(rows)
}

/// Reads a JSON table from disk.
pub fn load_ground_truth(path: &Path) -> Result<Vec<TableRow>> {
    let json = std::fs::read_to_string(path).map_err(|e| Error::GroundTruth(format!("{}: {e}", path.display())))?;
    parse_ground_truth(&json)
}

fn embedded() -> Result<&'static [TableRow]> {
    static ROWS: OnceLock<std::result::Result<Vec<TableRow>, Error>> = OnceLock::new();
    ROWS.get_or_init(|| parse_ground_truth(EMBEDDED)).as_deref().map_err(Clone::clone)
}

/// Rows of `rows` with the given Picard rank, optionally only primitive ones.
pub fn select(rows: &[TableRow], rho: usize, primitive_only: bool) -> Result<Vec<TableRow>> {
    if !(2..=3).contains(&rho) {
        return Err(Error::Scope(format!("no table for Picard rank {rho}")));
    }
    Ok(rows.iter().filter(|r| r.rho == rho && (r.primitive || !primitive_only)).cloned().collect())
}

/// Embedded rows with the given Picard rank, optionally only primitive ones.
pub fn ground_truth(rho: usize, primitive_only: bool) -> Result<Vec<TableRow>> {
    select(embedded()?, rho, primitive_only)
}

/// Checks unique ids, unique labelling keys, even positive degrees and
/// aligned invariants.
pub fn validate_rows(rows: &[TableRow]) -> Result<()> {
    let mut ids = BTreeSet::new();
    let mut keys = BTreeSet::new();
    for row in rows {
        let bad = |msg: String| Err(Error::GroundTruth(format!("row {}: {msg}", row.table_id)));
        if !ids.insert(row.table_id.as_str()) {
            return bad("duplicate id".into());
        }
        if row.kx3 <= 0 || row.kx3 % 2 != 0 {
            return bad(format!("(-K)^3 = {} is not even and positive", row.kx3));
        }
        if row.invariants.len() != row.ray_types.len() {
            return bad("invariants not aligned with ray types".into());
        }
        if !keys.insert(label_key(row.rho, &row.ray_types, row.kx3)) {
            return bad("ray types and degree repeat another row".into());
        }
    }
    Ok(())
}

type LabelKey = (usize, Vec<RayType>, i64);

fn label_key(rho: usize, types: &[RayType], kx3: i64) -> LabelKey {
    let mut types = types.to_vec();
    types.sort();
    (rho, types, kx3)
}

/// Labels each record with the id of the truth row sharing its Picard rank,
/// ray types and degree; unmatched records keep an empty id.
pub fn assign_table_ids(records: &mut [SolutionRecord], truth: &[TableRow]) -> Result<()> {
    validate_rows(truth)?;
    let index: BTreeMap<LabelKey, &str> =
        truth.iter().map(|r| (label_key(r.rho, &r.ray_types, r.kx3), r.table_id.as_str())).collect();
    for record in records.iter_mut() {
        let key = label_key(record.rho, &record.ray_types(), record.kx3);
        record.table_id = index.get(&key).map(|s| s.to_string()).unwrap_or_default();
    }
    Ok(())
}

/// Sort key ordering ids like `2-9` before `2-10`; empty ids sort last.
pub fn table_id_key(id: &str) -> (u64, u64, String) {
    let mut parts = id.splitn(2, '-').map(|p| p.parse::<u64>().ok());
    match (parts.next().flatten(), parts.next().flatten()) {
        (Some(a), Some(b)) => (a, b, String::new()),
        _ => (u64::MAX, u64::MAX, id.to_string()),
    }
}

/// Lowercase, punctuation replaced by spaces, whitespace collapsed.
pub fn normalize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_alphanumeric() { c.to_ascii_lowercase() } else { ' ' })
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

fn normalized_sorted(v: &[String]) -> Vec<String> {
    let mut out: Vec<String> = v.iter().map(|s| normalize(s)).collect();
    out.sort();
    out
}

/// One differing field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub table_id: String,
    pub field: String,
    pub expected: String,
    pub actual: String,
}

/// Difference between computed records and a table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    /// Truth ids with no computed record.
    pub missing: Vec<String>,
    /// Computed records matching no truth row.
    pub extra: Vec<SolutionRecord>,
    pub mismatched: Vec<Mismatch>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "no differences");
        }
        for id in &self.missing {
            writeln!(f, "missing {id}")?;
        }
        for r in &self.extra {
            let types: Vec<String> = r.ray_types().iter().map(ToString::to_string).collect();
            writeln!(f, "extra rho={} (-K)^3={} rays={}", r.rho, r.kx3, types.join("+"))?;
        }
        for m in &self.mismatched {
            writeln!(f, "mismatch {} {}: expected {}, got {}", m.table_id, m.field, m.expected, m.actual)?;
        }
        Ok(())
    }
}

/// Field-by-field comparison of labelled records against truth rows.
pub fn diff(computed: &[SolutionRecord], truth: &[TableRow]) -> DiffReport {
    let by_id: BTreeMap<&str, &SolutionRecord> =
        computed.iter().filter(|r| !r.table_id.is_empty()).map(|r| (r.table_id.as_str(), r)).collect();
    let truth_ids: BTreeSet<&str> = truth.iter().map(|r| r.table_id.as_str()).collect();
    let mut report = DiffReport {
        extra: computed.iter().filter(|r| !truth_ids.contains(r.table_id.as_str())).cloned().collect(),
        ..DiffReport::default()
    };
    for row in truth {
        let Some(record) = by_id.get(row.table_id.as_str()) else {
            report.missing.push(row.table_id.clone());
            continue;
        };
        let mut check = |field: String, expected: String, actual: String| {
            if expected != actual {
                report.mismatched.push(Mismatch { table_id: row.table_id.clone(), field, expected, actual });
            }
        };
        check("rho".into(), row.rho.to_string(), record.rho.to_string());
        check("kx3".into(), row.kx3.to_string(), record.kx3.to_string());
        check("ray_types".into(), format!("{:?}", row.ray_types), format!("{:?}", record.ray_types()));
        check("primitive".into(), row.primitive.to_string(), record.primitive.to_string());
        check(
            "descriptions".into(),
            normalized_sorted(&row.descriptions).join(" | "),
            normalized_sorted(&record.descriptions).join(" | "),
        );
        if let Some(note) = &row.char_note {
            check("char_note".into(), normalize(note), record.char_note.as_deref().map(normalize).unwrap_or_default());
        }
        for (i, inv) in row.invariants.iter().enumerate() {
            let actual = record.rays.get(i).map(RayInvariants::from).unwrap_or_default();
            let actual: BTreeMap<&str, String> = actual.fields().into_iter().collect();
            for (name, expected) in inv.fields() {
                let got = actual.get(name).cloned().unwrap_or_else(|| "absent".into());
                check(format!("rays[{i}].{name}"), expected, got);
            }
        }
    }
    report
}

impl SolutionRecord {
    /// The table row this record reproduces.
    pub fn to_table_row(&self) -> TableRow {
        TableRow {
            table_id: self.table_id.clone(),
            rho: self.rho,
            kx3: self.kx3,
            ray_types: self.ray_types(),
            invariants: self.rays.iter().map(RayInvariants::from).collect(),
            descriptions: self.descriptions.clone(),
            primitive: self.primitive,
            char_note: self.char_note.clone(),
            provenance: String::new(),
        }
    }
}

/// Output format of [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// Anything that can be shown as a table row.
pub trait TableView {
    fn table_row(&self) -> TableRow;
}

impl TableView for TableRow {
    fn table_row(&self) -> TableRow {
        self.clone()
    }
}

impl TableView for SolutionRecord {
    fn table_row(&self) -> TableRow {
        self.to_table_row()
    }
}

/// `C1: deg_delta=5; E1: r=4, l3=1, deg_b=7, genus=5`.
pub fn ray_summary(row: &TableRow) -> String {
    row.ray_types
        .iter()
        .zip(row.invariants.iter().chain(std::iter::repeat(&RayInvariants::default())))
        .map(|(t, inv)| {
            let fields: Vec<String> = inv.fields().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
            if fields.is_empty() {
                t.to_string()
            } else {
                format!("{t}: {}", fields.join(", "))
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Serialize)]
struct CsvLine {
    table_id: String,
    rho: usize,
    kx3: i64,
    ray_types: String,
    rays: String,
    descriptions: String,
    primitive: bool,
}

/// Deterministic serialization of `rows`.
pub fn emit<R: TableView + Serialize>(rows: &[R], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows).map_err(|e| Error::Serialization(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(["table_id", "rho", "kx3", "ray_types", "rays", "descriptions", "primitive"])
                .map_err(|e| Error::Serialization(e.to_string()))?;
            for row in rows.iter().map(TableView::table_row) {
                let types: Vec<String> = row.ray_types.iter().map(ToString::to_string).collect();
                w.serialize(CsvLine {
                    rays: ray_summary(&row),
                    ray_types: types.join("+"),
                    descriptions: row.descriptions.join(" | "),
                    table_id: row.table_id,
                    rho: row.rho,
                    kx3: row.kx3,
                    primitive: row.primitive,
                })
                .map_err(|e| Error::Serialization(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Serialization(e.to_string()))
        }
        Format::Markdown => {
            let mut out = String::from("| No. | (-K)^3 | Description | Extremal rays |\n|---|---|---|---|\n");
            for row in rows.iter().map(TableView::table_row) {
                let cell = |s: String| s.replace('|', "\\|");
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    row.table_id,
                    row.kx3,
                    cell(row.descriptions.join("; or ")),
                    cell(ray_summary(&row))
                ));
            }
            Ok(out.into_bytes())
        }
    }
}
