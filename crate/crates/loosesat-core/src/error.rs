use thiserror::Error;

/// Errors raised by constructors and queries when an argument leaves the
/// domain the operation is defined on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex([usize; 3]),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge([usize; 3]),
    #[error("operation undefined for a vertex paired with itself ({0})")]
    SamePair(usize),
    #[error("triple {0:?} is already an edge")]
    AlreadyEdge([usize; 3]),
    #[error("triple {0:?} is not an edge")]
    NotAnEdge([usize; 3]),
    #[error("graph contains a loose triangle; operation requires a triangle-free graph")]
    NotTriangleFree,
    #[error("construction is defined only for n >= 14 (got {0})")]
    ConstructionTooSmall(usize),
    #[error("threshold parameter ell must be at least 2 (got {0})")]
    BadEll(usize),
    #[error("far-neighbor parameter j must be at least 2 (got {0})")]
    BadFar(usize),
    #[error("invalid search parameters: {0}")]
    BadSearch(String),
}

/// Raised by the lemma suite when the audited graph does not satisfy the
/// hypothesis the claim is a theorem about.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("precondition not met: {0}")]
pub struct PreconditionError(pub String);
