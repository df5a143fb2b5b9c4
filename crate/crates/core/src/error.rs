use thiserror::Error;

/// Errors shared by diagram handling, polynomial algebra, the skein
/// engines, and the invariant evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("malformed PD text at byte {pos}: {msg}")]
    MalformedPd { pos: usize, msg: String },
    #[error("invalid PD code: {0}")]
    InvalidPd(String),
    #[error("diagram is not a knot: {0}")]
    NotAKnot(String),
    #[error("crossing index {index} out of range (diagram has {len} crossings)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("crossing {0} is not marked as a double point")]
    NotADoublePoint(usize),
    #[error("crossing {0} is already marked as a double point")]
    AlreadyADoublePoint(usize),
    #[error("diagram too large: {crossings} crossings exceeds the configured bound {bound}")]
    DiagramTooLarge { crossings: usize, bound: usize },
    #[error("too many double points: {points} would need 2^{points} resolutions (bound {bound})")]
    TooManyDoublePoints { points: usize, bound: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("pole: variable '{0}' carries a negative exponent and was assigned zero")]
    PoleAtZero(String),
    #[error("square-root branch undefined for exact negative real {0}")]
    BranchUndefined(String),
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("substitution target exponent not expressible: {0}")]
    UnsupportedExponent(String),
    #[error("value grid incomplete: expected {expected} values, got {got}")]
    IncompleteGrid { expected: usize, got: usize },
    #[error("too few values: got {got}, need at least {need}")]
    TooFewValues { got: usize, need: usize },
    #[error("degenerate inner function: {0}")]
    DegenerateG(String),
    #[error("grid budget exceeded: {points} evaluation points over budget {budget}")]
    GridBudgetExceeded { points: usize, budget: usize },
    #[error("rank computation needs exact matrix entries; '{0}' evaluated approximately")]
    RankNeedsExact(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown knot '{0}'")]
    UnknownKnot(String),
    #[error("knot table file not found: {0}")]
    FileNotFound(String),
    #[error("malformed knot table entry on line {line}: {msg}")]
    MalformedEntry { line: usize, msg: String },
    #[error("duplicate knot name '{0}' in table")]
    DuplicateName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
