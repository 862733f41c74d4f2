use thiserror::Error;

/// Errors surfaced by the certified-arithmetic pipeline.
///
/// Every variant is a hard failure: the library never silently guesses when
/// a comparison, expansion or reduction cannot be certified.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// Operand interval leaves the mathematical domain of the operation
    /// (division by an interval containing zero, log of an interval
    /// touching zero, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A comparison stayed inconclusive after escalating to the maximum
    /// allowed precision.
    #[error("precision escalation exhausted at {max_digits} digits: {context}")]
    EscalationFailure { context: String, max_digits: u32 },

    /// A continued-fraction expansion does not contain enough certified
    /// quotients for the requested query.
    #[error("insufficient continued-fraction expansion: {0}")]
    InsufficientExpansion(String),

    /// No convergent within the budget produced a certified positive epsilon.
    #[error("reduction failed: {0}")]
    ReductionFailure(String),

    /// A link of the bound chain could not be certified.
    #[error("bound chain link failed: {0}")]
    ChainFailure(String),

    /// An exact-arithmetic oracle found an inconsistency.
    #[error("oracle failure: {0}")]
    OracleFailure(String),

    /// Malformed configuration file or value.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
