//! JSON documents for partitions (`.vpart.json`) and reports (`.vreport.json`).
//!
//! The partition schema is strict: unknown keys are rejected and
//! `format_version` must be 1.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectives::{ConnectiveTriple, Negation, TConorm, TNorm};
use crate::error::Error;
use crate::measure::{Judgement, MembershipSpaceReport};
use crate::partition::{PartitionCandidate, ValidationReport, VaguePartition};
use crate::plfunc::{Interval, PiecewiseLinearFn};

pub const FORMAT_VERSION: u32 = 1;
pub const PARTITION_EXTENSION: &str = ".vpart.json";
pub const REPORT_EXTENSION: &str = ".vreport.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub format_version: u32,
    pub concept: String,
    pub attribute: String,
    pub domain: [f64; 2],
    pub blocks: Vec<BlockDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDocument {
    pub name: String,
    pub breakpoints: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDocument {
    pub negation: String,
    pub tnorm: String,
    pub tconorm: String,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("syntax error at line {line}, column {column} (byte {offset}): {message}")]
    Syntax {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("not a vague partition: {}", summarize(.0))]
    Validation(Box<ValidationReport>),
}

fn summarize(r: &ValidationReport) -> String {
    let parts: Vec<String> = r
        .failures()
        .map(|c| format!("condition ({}) {}", c.condition, c.reason.as_deref().unwrap_or("fails")))
        .collect();
    parts.join("; ")
}

fn schema(path: impl fmt::Display, e: impl fmt::Display) -> LoadError {
    LoadError::Schema {
        path: path.to_string(),
        message: e.to_string(),
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

impl PartitionDocument {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: PartitionDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_data() {
                schema(path, inner)
            } else {
                LoadError::Syntax {
                    line: inner.line(),
                    column: inner.column(),
                    offset: byte_offset(text, inner.line(), inner.column()),
                    message: inner.to_string(),
                }
            }
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(schema(
                "format_version",
                format!("unsupported version {} (expected {FORMAT_VERSION})", doc.format_version),
            ));
        }
        Ok(doc)
    }

    pub fn from_partition(p: &VaguePartition, triple: &ConnectiveTriple) -> Self {
        let d = p.domain();
        PartitionDocument {
            format_version: FORMAT_VERSION,
            concept: p.concept().to_string(),
            attribute: p.attribute().to_string(),
            domain: [d.lo(), d.hi()],
            blocks: p
                .blocks()
                .iter()
                .map(|b| BlockDocument {
                    name: b.name().to_string(),
                    breakpoints: b.function().breakpoints().iter().map(|&(x, y)| [x, y]).collect(),
                })
                .collect(),
            triple: Some(TripleDocument {
                negation: triple.negation().name().into(),
                tnorm: triple.tnorm().name().into(),
                tconorm: triple.tconorm().name().into(),
            }),
        }
    }

    pub fn triple(&self) -> Result<ConnectiveTriple, LoadError> {
        let Some(t) = &self.triple else {
            return Ok(ConnectiveTriple::default());
        };
        let n: Negation = t.negation.parse().map_err(|e| schema("triple.negation", e))?;
        let tn: TNorm = t.tnorm.parse().map_err(|e| schema("triple.tnorm", e))?;
        let tc: TConorm = t.tconorm.parse().map_err(|e| schema("triple.tconorm", e))?;
        ConnectiveTriple::new(n, tn, tc).map_err(|e| schema("triple", e))
    }

    /// The blocks as an unvalidated candidate.
    pub fn candidate(&self) -> Result<PartitionCandidate, LoadError> {
        let domain = Interval::new(self.domain[0], self.domain[1]).map_err(|e| schema("domain", e))?;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let pts = b.breakpoints.iter().map(|&[x, y]| (x, y)).collect();
            let f = PiecewiseLinearFn::on(domain, pts).map_err(|e| schema(format!("blocks[{i}].breakpoints"), e))?;
            blocks.push((b.name.clone(), f));
        }
        PartitionCandidate::new(domain, blocks).map_err(|e| schema("blocks", e))
    }

    pub fn to_partition(&self) -> Result<(VaguePartition, ConnectiveTriple), LoadError> {
        let triple = self.triple()?;
        let candidate = self.candidate()?;
        let p = VaguePartition::new(self.concept.clone(), self.attribute.clone(), candidate).map_err(|e| match e {
            Error::InvalidPartition(r) => LoadError::Validation(r),
            other => schema("blocks", other),
        })?;
        Ok((p, triple))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

/// Parses and validates a partition document.
pub fn load_partition_str(text: &str) -> Result<(VaguePartition, ConnectiveTriple), LoadError> {
    PartitionDocument::parse(text)?.to_partition()
}

pub fn load_partition(path: impl AsRef<Path>) -> Result<(VaguePartition, ConnectiveTriple), LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_partition_str(&text)
}

pub fn partition_to_json(p: &VaguePartition, triple: &ConnectiveTriple) -> String {
    PartitionDocument::from_partition(p, triple).to_json()
}

/// Writes the document to `path` and returns its text.
pub fn save_partition(
    p: &VaguePartition,
    triple: &ConnectiveTriple,
    path: impl AsRef<Path>,
) -> Result<String, LoadError> {
    let path = path.as_ref();
    let text = partition_to_json(p, triple);
    fs::write(path, &text).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text)
}

/// Body of a `.vreport.json` file.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ReportDocument {
    pub format_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub judgement: Option<Judgement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipSpaceReport>,
}

impl ReportDocument {
    pub fn new() -> Self {
        ReportDocument {
            format_version: FORMAT_VERSION,
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), LoadError> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|source| LoadError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Partition documents shipped with the crate.
pub mod bundled {
    /// Heights of Dutch men in 2006: short, medium, tall on `[0, 3]` metres.
    pub const HEIGHT_NL_2006: &str = include_str!("../assets/height_nl_2006.vpart.json");
    /// Ball colour: orange and red on a `[0, 1]` hue scale.
    pub const BALL_COLOUR: &str = include_str!("../assets/ball_colour.vpart.json");
    /// Ball size: small and large on a `[0, 1]` size scale.
    pub const BALL_SIZE: &str = include_str!("../assets/ball_size.vpart.json");

    pub const ALL: [(&str, &str); 3] = [
        ("height_nl_2006", HEIGHT_NL_2006),
        ("ball_colour", BALL_COLOUR),
        ("ball_size", BALL_SIZE),
    ];
}
