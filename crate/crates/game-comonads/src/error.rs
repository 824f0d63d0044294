use thiserror::Error;

/// Errors raised by library operations. Invariant *violations* discovered by
/// the validators are ordinary data (see [`crate::structure::Violation`]);
/// errors are reserved for inputs that make an operation meaningless.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vocabulary mismatch between source and target")]
    VocabMismatch,
    #[error("tag, bound, or vocabulary mismatch between forest structures")]
    TagMismatch,
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("map is not a pathwise embedding")]
    NotAPathwiseEmbedding,
    #[error("duplicator does not win from the root position")]
    DuplicatorLoses,
    #[error("unsupported query: {0}")]
    UnsupportedQuery(String),
    #[error("resource budget exceeded: needed {needed} nodes, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("symbol collision: {0}")]
    SymbolCollision(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
