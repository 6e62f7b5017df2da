use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series constant term is not a unit: {0}")]
    NonUnitConstantTerm(String),

    #[error("zeta function has a pole at {0}")]
    ZetaPole(String),

    #[error("invalid curve data: {0}")]
    InvalidCurve(String),

    #[error("slope undefined for rank zero")]
    ZeroRank,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("linear system window too small: {0}")]
    WindowTooSmall(String),

    #[error("linear system inconsistent: {0}")]
    Inconsistent(String),

    #[error("wall-crossing requires H.K_S < 0 (got {0})")]
    WallNotNegative(String),

    #[error("missing factor series for class (r={rank}, c1={c1})")]
    MissingSeries { rank: i64, c1: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),
}
