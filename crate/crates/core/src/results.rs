//! JSON persistence for enumeration and transport results.
//!
//! Schema (all keys always present):
//!
//! ```json
//! {
//!   "family": "D", "m": 3, "n": 1, "count": 50,
//!   "subsets": [["(0,2)", "(1,5)+", "..."]],
//!   "dissections": [[[0, 2], [3, 5]]],
//!   "fibers": [1, 2],
//!   "toolVersion": "0.1.0"
//! }
//! ```
//!
//! `count` equals the number of subsets when any are present, otherwise the
//! number of dissections. `fibers`, when nonempty, is aligned with
//! `dissections` and sums to the subset count. Reading validates the whole
//! payload against the diagram it names.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::orthogonal::OrthogonalSubset;
use crate::polygon::{Chord, Dissection, TransportReport};
use crate::quiver::{DiagramSpec, Family};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsPayload {
    pub family: String,
    pub m: u32,
    pub n: u32,
    pub count: u64,
    pub subsets: Vec<Vec<String>>,
    pub dissections: Vec<Vec<[u32; 2]>>,
    pub fibers: Vec<u32>,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
}

fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

impl ResultsPayload {
    pub fn from_subsets(spec: &DiagramSpec, n: u32, subsets: &[OrthogonalSubset]) -> Self {
        ResultsPayload {
            family: spec.family().to_string(),
            m: spec.m(),
            n,
            count: subsets.len() as u64,
            subsets: subsets
                .iter()
                .map(|s| s.members.iter().map(|v| v.to_string()).collect())
                .collect(),
            dissections: Vec::new(),
            fibers: Vec::new(),
            tool_version: tool_version(),
        }
    }

    pub fn from_dissections(spec: &DiagramSpec, dissections: &[Dissection]) -> Self {
        ResultsPayload {
            family: spec.family().to_string(),
            m: spec.m(),
            n: 1,
            count: dissections.len() as u64,
            subsets: Vec::new(),
            dissections: dissections.iter().map(chord_rows).collect(),
            fibers: Vec::new(),
            tool_version: tool_version(),
        }
    }

    pub fn from_transport(
        spec: &DiagramSpec,
        subsets: &[OrthogonalSubset],
        dissections: &[Dissection],
        report: &TransportReport,
    ) -> Self {
        let mut p = ResultsPayload::from_subsets(spec, 1, subsets);
        p.dissections = dissections.iter().map(chord_rows).collect();
        p.fibers = report.fibers.clone();
        p
    }

    pub fn spec(&self) -> Result<DiagramSpec> {
        let family: Family = self.family.parse()?;
        DiagramSpec::new(family, self.m)
    }

    /// Structural validation: parseable family, vertices and chords valid for
    /// the named diagram, and the count/fiber bookkeeping consistent.
    pub fn validate(&self) -> Result<()> {
        let spec = self.spec()?;
        let expected = if !self.subsets.is_empty() {
            self.subsets.len() as u64
        } else {
            self.dissections.len() as u64
        };
        if self.count != expected {
            return Err(Error::SchemaViolation(format!(
                "count {} does not match payload size {expected}",
                self.count
            )));
        }
        for row in &self.subsets {
            for s in row {
                spec.parse_vertex(s)?;
            }
        }
        for row in &self.dissections {
            for &[p, q] in row {
                Chord::new(spec.l(), p, q)?;
            }
        }
        if !self.fibers.is_empty() {
            if self.fibers.len() != self.dissections.len() {
                return Err(Error::SchemaViolation(
                    "fibers are not aligned with dissections".into(),
                ));
            }
            if !self.subsets.is_empty() {
                let total: u64 = self.fibers.iter().map(|&f| f as u64).sum();
                if total != self.subsets.len() as u64 {
                    return Err(Error::SchemaViolation(format!(
                        "fiber sizes sum to {total}, expected {}",
                        self.subsets.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical serialization (pretty JSON, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("payload serializes");
        s.push('\n');
        s
    }
}

fn chord_rows(d: &Dissection) -> Vec<[u32; 2]> {
    d.chords
        .iter()
        .map(|c| {
            let (a, b) = c.endpoints();
            [a, b]
        })
        .collect()
}

/// Validates and writes a payload.
pub fn write_results(path: &Path, payload: &ResultsPayload) -> Result<()> {
    payload.validate()?;
    fs::write(path, payload.to_json())?;
    Ok(())
}

/// Reads and validates a payload.
pub fn read_results(path: &Path) -> Result<ResultsPayload> {
    let text = fs::read_to_string(path)?;
    let payload: ResultsPayload =
        serde_json::from_str(&text).map_err(|e| Error::SchemaViolation(e.to_string()))?;
    payload.validate()?;
    Ok(payload)
}
