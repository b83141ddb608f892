//! Error taxonomy shared by all modules.
//!
//! The CLI maps these onto its exit-code contract: promise violations exit 3,
//! everything else (validation, generation, parsing, refusals, ordering) exits 2.

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter or argument violates its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Instance generation is infeasible or exhausted its repair budget.
    #[error("generation failed: {0}")]
    Generation(String),

    /// Malformed instance or trace text. `line` is 1-based; 0 means the
    /// failure concerns the file as a whole.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An exhaustive oracle was asked to run beyond its size limit.
    #[error("refused: {0}")]
    Refusal(String),

    /// Thresholds are not ordered T_C > T_S; no advantage region exists here.
    #[error("no advantage ordering: {0}")]
    NoAdvantage(String),

    /// A NO-instance promise turned out to be false (the instance is satisfiable).
    #[error("promise violation: {0}")]
    PromiseViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
