//! File formats: Cayley table input, verification reports and Γ exports.
//!
//! Every emitter goes through [`serde_json::Value`]; object keys come out
//! sorted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finsemigroup::{CayleyTable, NonAssociative, TableError};
use crate::numrep::{CONSTRUCTION_TOL, IDENTITY_TOL, SEPARATION_THRESHOLD};
use crate::qfam::{CheckRecord, GammaPresentation, VerificationReport};
use crate::starpoly::RelationPreset;

pub const TOOL_VERSION: &str = concat!("qfam ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed table file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// `{"n": 2, "table": [[0,1],[1,0]], "label": "Z2"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub n: usize,
    pub table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TableFile {
    pub fn from_table(table: &CayleyTable, label: Option<String>) -> Self {
        TableFile {
            n: table.order(),
            table: table
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v as i64).collect())
                .collect(),
            label,
        }
    }

    pub fn to_table(&self) -> Result<CayleyTable, TableError> {
        CayleyTable::from_signed_rows(self.n, &self.table)
    }
}

pub fn parse_table_file(bytes: &[u8]) -> Result<(CayleyTable, Option<String>), ParseError> {
    let file: TableFile = serde_json::from_slice(bytes)?;
    Ok((file.to_table()?, file.label))
}

pub fn parse_table(bytes: &[u8]) -> Result<CayleyTable, ParseError> {
    parse_table_file(bytes).map(|(t, _)| t)
}

/// Single-line table JSON, as streamed by enumeration.
pub fn emit_table(table: &CayleyTable, label: Option<&str>) -> String {
    let file = TableFile::from_table(table, label.map(str::to_string));
    serde_json::to_string(&canonical(&file)).expect("table serializes")
}

fn canonical<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn pretty(value: serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&value).expect("JSON value serializes");
    out.push(b'\n');
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub construction: f64,
    pub identity: f64,
    pub separation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            construction: CONSTRUCTION_TOL,
            identity: IDENTITY_TOL,
            separation: SEPARATION_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub m: usize,
    pub n: usize,
    pub preset: RelationPreset,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub seeds: Vec<u64>,
    pub dims: Vec<usize>,
    pub tolerances: Tolerances,
}

impl ReportConfig {
    pub fn new(m: usize, table: &CayleyTable, preset: RelationPreset) -> Self {
        ReportConfig {
            m,
            n: table.order(),
            preset,
            table: table.rows(),
            label: None,
            seeds: Vec::new(),
            dims: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// `pass`, `fail` or `inconclusive`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CheckEntry {
    pub fn from_record(r: &CheckRecord, timings: bool) -> Self {
        CheckEntry {
            name: r.name.clone(),
            verdict: r.verdict.label().to_string(),
            witness: r.verdict.witness().map(str::to_string),
            residuals: r.residuals.clone(),
            elapsed_ms: timings.then_some(r.elapsed.as_secs_f64() * 1e3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: String,
    pub config: ReportConfig,
    pub checks: Vec<CheckEntry>,
    /// Objects found by searches (counits, antipode candidates), as text.
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub found: std::collections::BTreeMap<String, Vec<String>>,
}

impl ReportFile {
    /// Wall-clock times are included only when `timings` is set.
    pub fn new(config: ReportConfig, report: &VerificationReport, timings: bool) -> Self {
        ReportFile {
            version: TOOL_VERSION.to_string(),
            config,
            checks: report
                .records
                .iter()
                .map(|r| CheckEntry::from_record(r, timings))
                .collect(),
            found: Default::default(),
        }
    }
}

pub fn emit_report(report: &ReportFile) -> Vec<u8> {
    pretty(canonical(report))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationFile {
    pub version: String,
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    pub associative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<NonAssociative>,
    pub identity: Option<usize>,
}

pub fn emit_validation(file: &ValidationFile) -> Vec<u8> {
    pretty(canonical(file))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaExport {
    pub version: String,
    pub m: usize,
    pub n: usize,
    pub preset: RelationPreset,
    pub table: Vec<Vec<usize>>,
    pub equations: Vec<String>,
}

impl GammaExport {
    pub fn new(g: &GammaPresentation) -> Self {
        let cfg = g.config();
        GammaExport {
            version: TOOL_VERSION.to_string(),
            m: cfg.m(),
            n: cfg.n(),
            preset: cfg.preset(),
            table: cfg.table().rows(),
            equations: g.equations(),
        }
    }
}

pub fn emit_gamma(export: &GammaExport) -> Vec<u8> {
    pretty(canonical(export))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl VerdictCounts {
    pub fn record(&mut self, report: &VerificationReport) {
        match report.exit_code() {
            0 => self.pass += 1,
            1 => self.fail += 1,
            _ => self.inconclusive += 1,
        }
    }
}

/// Aggregate over every table of one order; only non-passing tables are
/// listed by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasSummary {
    pub version: String,
    pub order: usize,
    /// `None` when each table uses its own order.
    pub m: Option<usize>,
    pub preset: RelationPreset,
    pub tables: usize,
    pub verdicts: VerdictCounts,
    pub failing: Vec<String>,
    pub inconclusive: Vec<String>,
}

pub fn emit_atlas(summary: &AtlasSummary) -> Vec<u8> {
    pretty(canonical(summary))
}
