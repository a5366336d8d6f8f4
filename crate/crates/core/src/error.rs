use thiserror::Error;

use crate::expr::ParseError;
use crate::partition::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} outside {what}")]
    Domain { what: String, value: f64 },

    #[error("negation `{0}` is not strong")]
    NotStrong(&'static str),

    #[error("{tnorm} and {tconorm} are not dual under {negation} (residual {residual:e} at ({x}, {y}))")]
    NotDual {
        negation: &'static str,
        tnorm: &'static str,
        tconorm: &'static str,
        residual: f64,
        x: f64,
        y: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid membership function: {0}")]
    InvalidFunction(String),

    #[error("malformed partition candidate: {0}")]
    MalformedCandidate(String),

    #[error("candidate is not a vague partition")]
    InvalidPartition(Box<ValidationReport>),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unbound atom `{0}`")]
    UnboundAtom(String),

    #[error("fuzzy sets belong to different partitions or connective triples")]
    CrossPartition,

    #[error("cannot generate partition: {0}")]
    Generation(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_degree(what: &str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            what: format!("{what} range [0, 1]"),
            value,
        })
    }
}
