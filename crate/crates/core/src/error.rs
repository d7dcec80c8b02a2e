use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Position of a token in source text. Lines and columns are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: expected ", self.span)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

/// Which resource budget a reasoning call ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Nodes,
    Branches,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Nodes => f.write_str("tableau nodes"),
            Resource::Branches => f.write_str("tableau branches"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("undefined name `{0}`")]
    UndefinedName(String),
    #[error("`{0}` is already defined")]
    RedefinedName(String),
    #[error("cyclic terminology: {}", .0.join(" -> "))]
    CyclicTBox(Vec<String>),
    #[error("model enumeration exceeded its budget of {0} interpretations")]
    BudgetExceeded(u64),
    #[error("resource limit reached: more than {limit} {resource}")]
    ResourceLimit { resource: Resource, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown view `{0}`")]
    UnknownView(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("event `{event}` is not permitted after {}", .after.as_deref().map_or("the start".to_string(), |e| format!("`{e}`")))]
    EvolverViolation { event: String, after: Option<String> },
    #[error("no individual satisfies the description")]
    NoSuchIndividual,
    #[error("description is not unique: {}", fmt_names(.0))]
    NotUnique(BTreeSet<String>),
    #[error("integrity error in view `{view}`: {detail}")]
    IntegrityError { view: String, detail: String },
    #[error("{0}")]
    Invalid(String),
}

fn fmt_names(names: &BTreeSet<String>) -> String {
    names.iter().cloned().collect::<Vec<_>>().join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
