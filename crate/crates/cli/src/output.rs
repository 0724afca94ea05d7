//! Output records and their JSON / CSV / text encodings.
//!
//! Numbers are always emitted as exact text (`-35`, `3/2`,
//! `2*lambda - 2`); nothing passes through floating point. The JSON layout
//! is described by `schema/output.schema.json`.

use std::fmt::Write as _;
use std::str::FromStr;

use bellkit_core::{ExactRational, MultiPoly};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format `{s}` (text|json|csv)"))),
        }
    }
}

/// One monomial coeff·λ^lambda·x^x of a rendered polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub lambda: u32,
    pub x: u32,
    pub coeff: String,
}

/// One table entry or series coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub id: String,
    pub n: usize,
    /// Stirling column k of S(n, k); absent for sequences.
    pub column: Option<usize>,
    /// Poly index of the polylogarithmic families.
    pub k: Option<i64>,
    pub at_lambda: Option<String>,
    pub at_x: Option<String>,
    /// Canonical text; for series this is the EGF term n!·c_n.
    pub value: String,
    pub terms: Vec<TermRecord>,
    /// Ordinary coefficient c_n, for series output only.
    pub ogf: Option<String>,
}

impl OutputRecord {
    pub fn new(id: &str, n: usize, value: &MultiPoly) -> Self {
        OutputRecord {
            id: id.to_string(),
            n,
            column: None,
            k: None,
            at_lambda: None,
            at_x: None,
            value: value.to_string(),
            terms: term_records(value),
            ogf: None,
        }
    }

    pub fn with_specializations(
        mut self,
        at_lambda: Option<&ExactRational>,
        at_x: Option<&ExactRational>,
    ) -> Self {
        self.at_lambda = at_lambda.map(ToString::to_string);
        self.at_x = at_x.map(ToString::to_string);
        self
    }

    /// Rebuilds the value from the structured term list.
    pub fn value_from_terms(&self) -> Result<MultiPoly, CliError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c: ExactRational = t
                .coeff
                .parse()
                .map_err(|_| CliError::Usage(format!("bad coefficient `{}`", t.coeff)))?;
            terms.push((bellkit_core::ring::Monomial::new(t.lambda, t.x), c));
        }
        Ok(MultiPoly::from_terms(terms))
    }
}

pub fn term_records(p: &MultiPoly) -> Vec<TermRecord> {
    p.terms()
        .rev()
        .map(|(m, c)| TermRecord {
            lambda: m.lambda,
            x: m.x,
            coeff: c.to_string(),
        })
        .collect()
}

/// Column order of record CSV output.
pub const RECORD_CSV_COLUMNS: [&str; 8] = ["id", "n", "column", "k", "at_lambda", "at_x", "value", "ogf"];

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub id: String,
    pub n: usize,
    pub column: Option<usize>,
    pub k: Option<i64>,
    pub at_lambda: Option<String>,
    pub at_x: Option<String>,
    pub value: String,
    pub ogf: Option<String>,
}

impl From<&OutputRecord> for CsvRow {
    fn from(r: &OutputRecord) -> Self {
        CsvRow {
            id: r.id.clone(),
            n: r.n,
            column: r.column,
            k: r.k,
            at_lambda: r.at_lambda.clone(),
            at_x: r.at_x.clone(),
            value: r.value.clone(),
            ogf: r.ogf.clone(),
        }
    }
}

pub fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn records_to_csv(records: &[OutputRecord]) -> Result<String, CliError> {
    to_csv(records.iter().map(CsvRow::from))
}

pub fn records_from_csv(text: &str) -> Result<Vec<CsvRow>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| CliError::Usage(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header != RECORD_CSV_COLUMNS {
        return Err(CliError::Usage(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableDoc {
    pub kind: String,
    pub id: String,
    pub max_n: usize,
    pub records: Vec<OutputRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub kind: String,
    pub id: String,
    pub order: usize,
    pub records: Vec<OutputRecord>,
}

/// Tab-separated listing used by the text format for tables and series.
pub fn records_to_text(title: &str, records: &[OutputRecord], with_ogf: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    for r in records {
        let mut line = format!("{}", r.n);
        if let Some(c) = r.column {
            let _ = write!(line, "\t{c}");
        }
        if with_ogf {
            let _ = write!(line, "\t{}", r.ogf.as_deref().unwrap_or(""));
        }
        let _ = write!(line, "\t{}", r.value);
        let _ = writeln!(out, "{line}");
    }
    out
}
