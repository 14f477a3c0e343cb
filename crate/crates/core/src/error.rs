//! Error types, one enum per module plus a crate-level wrapper.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuError {
    #[error("unsupported bandwidth {0} MHz (expected 20, 40, 80 or 160)")]
    UnsupportedBandwidth(u32),
    #[error("RU({level},{index}) cannot be split")]
    SplitNotAllowed { level: usize, index: usize },
    #[error("SRU index {index} outside 1..={max}")]
    InvalidIndex { index: usize, max: usize },
    #[error("no RU({level},{index}) in this layout")]
    NoSuchNode { level: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MacError {
    #[error("frame dropped after {retries} retries")]
    FrameDropped { retries: u32 },
    #[error("type/subtype pair ({type_bits:02b}, {subtype_bits:04b}) is not a known frame kind")]
    UnknownFrameKind { type_bits: u8, subtype_bits: u8 },
    #[error("frame body of {0} octets exceeds 2312")]
    BodyTooLarge(usize),
    #[error("invalid timing parameters: {0}")]
    InvalidTiming(String),
    #[error("cannot parse bit string {0:?}")]
    BadBits(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integration failed: {0}")]
    Integration(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchedError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("station {0} is already present")]
    DuplicateStation(String),
    #[error("station {0} is not present")]
    UnknownStation(String),
    #[error("station {id} has invalid load {load}")]
    InvalidLoad { id: String, load: f64 },
    #[error("all queues are empty")]
    EmptyFlow,
    #[error("total offered load is zero")]
    NoLoad,
    #[error("requested {requested} SRUs but only {available} exist")]
    AssignmentOverflow { requested: usize, available: usize },
    #[error(transparent)]
    Ru(#[from] RuError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("fixed point did not converge after {iterations} iterations (residual {residual:e})")]
    Solver { iterations: usize, residual: f64 },
    #[error("invalid load at position {0}")]
    InvalidLoad(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Sched(#[from] SchedError),
    #[error(transparent)]
    Mac(#[from] MacError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Ru(#[from] RuError),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown key [{section}] {key}{}", fmt_line(*.line))]
    UnknownKey {
        section: String,
        key: String,
        line: Option<usize>,
    },
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("missing required key [{section}] {key}")]
    Missing { section: String, key: String },
    #[error("invalid value for [{section}] {key}{}: {msg}", fmt_line(*.line))]
    Invalid {
        section: String,
        key: String,
        line: Option<usize>,
        msg: String,
    },
}

fn fmt_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

/// Crate-level error; each variant maps to a CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ru(#[from] RuError),
    #[error(transparent)]
    Mac(#[from] MacError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Sched(#[from] SchedError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("run failed, partial results written to {path}: {cause}")]
    Partial { path: String, cause: String },
}

impl Error {
    /// 2 for configuration problems, 4 for partial results, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Sim(SimError::Config(_)) | Error::Sched(SchedError::Config(_)) => 2,
            Error::Partial { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
