use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("arc ({u},{v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("node {node} outside 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("duplicate arc ({0},{1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({0},{1}) is antiparallel to an existing arc")]
    AntiparallelArc(usize, usize),
    #[error("no arc between nodes {0} and {1}")]
    MissingPair(usize, usize),
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("node subset is empty")]
    EmptySubset,
    #[error("{what}: {requested} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("cop game with {cops} cop(s) needs {states} states, budget is {budget}")]
    StateBudget { cops: usize, states: u128, budget: u128 },
    #[error("generating sequence has {available} entries, {requested} steps requested")]
    SequenceTooShort { requested: usize, available: usize },
    #[error("invalid generating sequence: {0}")]
    BadSequence(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Cap and budget errors; the CLI maps these to their own exit code.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. } | Error::StateBudget { .. })
    }
}
