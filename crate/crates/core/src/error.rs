use thiserror::Error;

/// Errors raised by the enumerators, graph operations and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be positive")]
    NoVertices,

    #[error("edge {{{u}, {v}}} has an endpoint outside 0..{vertex_count}")]
    EndpointOutOfRange { u: usize, v: usize, vertex_count: usize },

    #[error("edge index {index} out of range for a graph with {len} edges")]
    EdgeIndexOutOfRange { index: usize, len: usize },

    #[error("edge {index} is a loop and cannot be contracted")]
    ContractLoop { index: usize },

    #[error("graph has a loop at vertex {vertex}; loops are not allowed here")]
    LoopNotAllowed { vertex: usize },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("{what}: requested {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("entry {position} is {value}; entries must be positive integers")]
    NonPositiveEntry { position: usize, value: u64 },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),

    #[error("x^{n}*f(1/x) is not a polynomial: f has degree {degree} > {n}")]
    NotAPolynomial { degree: u32, n: u32 },

    #[error("label {label} out of range for {vertex_count} vertices")]
    LabelOutOfRange { label: usize, vertex_count: usize },

    #[error("parent map is not a tree rooted at 0: {0}")]
    NotATree(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("unknown suite `{0}` (expected `default` or `quick`)")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
