use thiserror::Error;

/// Crate-wide error type.
///
/// `InvariantViolation` is special: it is raised when a search or pipeline
/// step that is guaranteed to succeed on inputs meeting its precondition
/// fails anyway. Such a failure would be mathematically significant, so it
/// carries a certificate (the offending graph in digraph6 form plus a
/// description) instead of panicking.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop arc ({0},{0}) not allowed")]
    LoopArc(usize),

    #[error("digon: both ({0},{1}) and ({1},{0}) given")]
    DigonArc(usize, usize),

    #[error("duplicate arc ({0},{1})")]
    DuplicateArc(usize, usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("colouring assigns {got} vertices, graph has {want}")]
    MissingVertexColour { got: usize, want: usize },

    #[error("modulus {0} is not a prime congruent to 3 mod 4")]
    BadModulus(u64),

    #[error("({0},{1}) is not an arc of the tournament")]
    NotAnArc(usize, usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invariant violation: {claim} (certificate: {certificate})")]
    InvariantViolation { claim: String, certificate: String },

    #[error("instance has {n} vertices, exceeding the configured limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("bad encoding length: expected {expected} payload bytes, got {got}")]
    BadLength { expected: usize, got: usize },

    #[error("order {0} invalid: cubic graphs need an even order >= 4")]
    BadOrder(usize),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub fn invariant(claim: impl Into<String>, certificate: impl Into<String>) -> Self {
        Error::InvariantViolation {
            claim: claim.into(),
            certificate: certificate.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
