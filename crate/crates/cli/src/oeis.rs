//! OEIS cross-reference lookups.
//!
//! Results are advisory: a hit only says that some OEIS entry starts with
//! the same terms. Tests replay recorded responses from a fixture directory;
//! live queries go through the JSON search endpoint.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const MIN_TERMS: usize = 4;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("an OEIS query needs at least {MIN_TERMS} terms, got {0}")]
    TooFewTerms(usize),
    #[error("unknown transform `{0}` (none|unsigned|shift)")]
    UnknownTransform(String),
    #[error("no recorded response at {}", .0.display())]
    FixtureMissing(PathBuf),
    #[error("no OEIS data source: pass --fixtures DIR or --live")]
    NoSource,
    #[error("OEIS request timed out")]
    Timeout,
    #[error("OEIS request failed: {0}")]
    Network(String),
    #[error("unexpected OEIS response: {0}")]
    Parse(String),
}

impl OeisError {
    pub fn is_network(&self) -> bool {
        matches!(self, OeisError::Timeout | OeisError::Network(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    None,
    /// Absolute value of every term.
    Unsigned,
    /// Drop the leading term.
    Shift,
}

impl FromStr for Transform {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Transform::None),
            "unsigned" => Ok(Transform::Unsigned),
            "shift" => Ok(Transform::Shift),
            _ => Err(OeisError::UnknownTransform(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisQuery {
    terms: Vec<BigInt>,
    transform: Transform,
}

impl OeisQuery {
    pub fn new(terms: Vec<BigInt>, transform: Transform) -> Result<Self, OeisError> {
        let q = OeisQuery { terms, transform };
        let n = q.transformed().len();
        if n < MIN_TERMS {
            return Err(OeisError::TooFewTerms(n));
        }
        Ok(q)
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn transformed(&self) -> Vec<BigInt> {
        match self.transform {
            Transform::None => self.terms.clone(),
            Transform::Unsigned => self.terms.iter().map(Signed::abs).collect(),
            Transform::Shift => self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Comma-separated terms after the transform, as sent to the search API.
    pub fn search_string(&self) -> String {
        self.transformed()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub id: String,
    pub name: String,
    pub data: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisResult {
    pub kind: String,
    pub query: String,
    pub transform: Transform,
    pub source: String,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug)]
pub enum Source {
    /// Replay `<dir>/<query>.json`.
    Fixtures(PathBuf),
    Live {
        base_url: String,
        timeout: Duration,
        cache_dir: Option<PathBuf>,
    },
}

/// Parses a search response. Accepts the bare-array layout, the older
/// object layout with a `results` field, and `null` for no matches.
pub fn parse_response(body: &str) -> Result<Vec<Candidate>, OeisError> {
    let v: Value = serde_json::from_str(body).map_err(|e| OeisError::Parse(e.to_string()))?;
    let entries = match &v {
        Value::Null => return Ok(Vec::new()),
        Value::Array(a) => a.as_slice(),
        Value::Object(o) => match o.get("results") {
            None | Some(Value::Null) => return Ok(Vec::new()),
            Some(Value::Array(a)) => a.as_slice(),
            Some(_) => return Err(OeisError::Parse("`results` is not an array".into())),
        },
        _ => return Err(OeisError::Parse("expected an array or object".into())),
    };
    entries
        .iter()
        .map(|e| {
            let number = e
                .get("number")
                .and_then(Value::as_u64)
                .ok_or_else(|| OeisError::Parse("entry without `number`".into()))?;
            let text = |key: &str| e.get(key).and_then(Value::as_str).unwrap_or_default().to_string();
            Ok(Candidate {
                id: format!("A{number:06}"),
                name: text("name"),
                data: text("data"),
            })
        })
        .collect()
}

fn fixture_path(dir: &Path, query: &OeisQuery) -> PathBuf {
    dir.join(format!("{}.json", query.search_string()))
}

fn fetch_live(base_url: &str, timeout: Duration, query: &OeisQuery) -> Result<String, OeisError> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(timeout))
        .build()
        .into();
    let url = format!("{}/search", base_url.trim_end_matches('/'));
    let mut resp = agent
        .get(&url)
        .query("q", query.search_string())
        .query("fmt", "json")
        .call()
        .map_err(|e| match e {
            ureq::Error::Timeout(_) => OeisError::Timeout,
            ureq::Error::Io(io) if io.kind() == std::io::ErrorKind::TimedOut => OeisError::Timeout,
            other => OeisError::Network(other.to_string()),
        })?;
    resp.body_mut().read_to_string().map_err(|e| match e {
        ureq::Error::Timeout(_) => OeisError::Timeout,
        other => OeisError::Network(other.to_string()),
    })
}

pub fn lookup(query: &OeisQuery, source: &Source) -> Result<OeisResult, OeisError> {
    let (body, origin) = match source {
        Source::Fixtures(dir) => {
            let path = fixture_path(dir, query);
            let body = fs::read_to_string(&path).map_err(|_| OeisError::FixtureMissing(path))?;
            (body, "fixture")
        }
        Source::Live {
            base_url,
            timeout,
            cache_dir,
        } => {
            let cached = cache_dir
                .as_ref()
                .and_then(|d| fs::read_to_string(fixture_path(d, query)).ok());
            match cached {
                Some(body) => (body, "cache"),
                None => {
                    let body = fetch_live(base_url, *timeout, query)?;
                    if let Some(dir) = cache_dir {
                        // A failed cache write only costs a refetch next time.
                        let _ =
                            fs::create_dir_all(dir).and_then(|_| fs::write(fixture_path(dir, query), &body));
                    }
                    (body, "live")
                }
            }
        }
    };
    Ok(OeisResult {
        kind: "oeis".to_string(),
        query: query.search_string(),
        transform: query.transform(),
        source: origin.to_string(),
        candidates: parse_response(&body)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&t| BigInt::from(t)).collect()
    }

    #[test]
    fn transforms() {
        let q = OeisQuery::new(terms(&[1, -2, 7, -35, 228]), Transform::Unsigned).unwrap();
        assert_eq!(q.search_string(), "1,2,7,35,228");
        let q = OeisQuery::new(terms(&[0, 1, 1, 2, 5]), Transform::Shift).unwrap();
        assert_eq!(q.search_string(), "1,1,2,5");
        assert!(matches!(
            OeisQuery::new(terms(&[1, 2]), Transform::None),
            Err(OeisError::TooFewTerms(2))
        ));
        assert!(matches!(
            OeisQuery::new(terms(&[1, 2, 3, 4]), Transform::Shift),
            Err(OeisError::TooFewTerms(3))
        ));
        assert!("sorted".parse::<Transform>().is_err());
    }

    #[test]
    fn response_layouts() {
        assert!(parse_response("null").unwrap().is_empty());
        assert!(parse_response(r#"{"count":0,"results":null}"#)
            .unwrap()
            .is_empty());
        let arr = r#"[{"number":110,"name":"Bell numbers","data":"1,1,2,5"}]"#;
        let obj = r#"{"count":1,"results":[{"number":110,"name":"Bell numbers","data":"1,1,2,5"}]}"#;
        let a = parse_response(arr).unwrap();
        assert_eq!(a, parse_response(obj).unwrap());
        assert_eq!(a[0].id, "A000110");
        assert!(parse_response("[{\"name\":\"x\"}]").is_err());
        assert!(parse_response("not json").is_err());
    }

    #[test]
    fn missing_fixture() {
        let q = OeisQuery::new(terms(&[9, 9, 9, 9]), Transform::None).unwrap();
        let err = lookup(&q, &Source::Fixtures(PathBuf::from("/nonexistent"))).unwrap_err();
        assert!(matches!(err, OeisError::FixtureMissing(_)));
        assert!(!err.is_network());
    }
}
