//! Problem instances: generation, parsing and validation for TSP, MDKP and MIS.
//!
//! All instance types are immutable after construction and every constructor
//! validates its invariants, so no partially-valid instance can escape this
//! module. Parsers accept both LF and CRLF line endings.

mod mdkp;
mod mis;
mod tsp;

use std::fmt;

pub use mdkp::{generate_mdkp, parse_mdkp, write_mdkp, MdkpInstance};
pub use mis::{
    generate_mis, parse_dimacs_graph, parse_dimacs_graph_counting, write_dimacs, DimacsWarnings,
    MisInstance,
};
pub use tsp::{generate_tsp, parse_tsplib, write_tsplib, TspInstance};

/// Identifier of the seeded generator algorithm used for synthetic instances.
/// Recorded in instance metadata so instances are reproducible across tools.
pub const GENERATOR_ID: &str = "chacha8";

/// The three problem families handled by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Tsp,
    Mdkp,
    Mis,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Tsp => "tsp",
            ProblemKind::Mdkp => "mdkp",
            ProblemKind::Mis => "mis",
        }
    }

    pub fn parse(s: &str) -> Option<ProblemKind> {
        match s.to_ascii_lowercase().as_str() {
            "tsp" => Some(ProblemKind::Tsp),
            "mdkp" => Some(ProblemKind::Mdkp),
            "mis" => Some(ProblemKind::Mis),
            _ => None,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A problem instance of any supported family.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Tsp(TspInstance),
    Mdkp(MdkpInstance),
    Mis(MisInstance),
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemInstance::Tsp(_) => ProblemKind::Tsp,
            ProblemInstance::Mdkp(_) => ProblemKind::Mdkp,
            ProblemInstance::Mis(_) => ProblemKind::Mis,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ProblemInstance::Tsp(t) => &t.name,
            ProblemInstance::Mdkp(m) => &m.name,
            ProblemInstance::Mis(m) => &m.name,
        }
    }

    /// Size of the native decision-variable space (cities, items, vertices).
    pub fn n(&self) -> usize {
        match self {
            ProblemInstance::Tsp(t) => t.n,
            ProblemInstance::Mdkp(m) => m.n,
            ProblemInstance::Mis(m) => m.n,
        }
    }
}

/// Error raised when instance data violates a type invariant or cannot be parsed.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceError {
    /// Structurally invalid instance data (bad dimension, negative weight, ...).
    Invalid(String),
    /// Malformed input text; carries a 1-based line number when known.
    Parse { line: Option<usize>, msg: String },
}

impl InstanceError {
    pub(crate) fn parse_at(line: usize, msg: impl Into<String>) -> Self {
        InstanceError::Parse {
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        InstanceError::Parse {
            line: None,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        InstanceError::Invalid(msg.into())
    }
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Invalid(msg) => write!(f, "invalid instance: {msg}"),
            InstanceError::Parse {
                line: Some(line),
                msg,
            } => write!(f, "parse error at line {line}: {msg}"),
            InstanceError::Parse { line: None, msg } => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for InstanceError {}

/// Splits text into logical lines, tolerating CRLF.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.trim_end_matches('\r'))
}
