use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input (line {line}): {message}")]
    MalformedInput { line: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("a generator cannot be paired with itself: `{0}`")]
    SamePair(String),
    #[error("too many generators ({0}); at most 64 are supported")]
    TooManyGenerators(usize),
    #[error("subset is not irreducible")]
    NotIrreducible,
    #[error("subset is not spherical")]
    NotSpherical,
    #[error("generators `{0}` and `{1}` are adjacent; no separator exists")]
    AdjacentPair(String, String),
    #[error("diagram is not chordal")]
    NotChordal,
    #[error("invalid twist move: {0}")]
    InvalidMove(String),
    #[error("`{0}`-`{1}` is not a qualifying bad 5-edge")]
    NotABadEdge(String, String),
    #[error("edge `{0}`-`{1}` has no bad separators")]
    NoBadSeparators(String, String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("subset is not a base")]
    NotABase,
    #[error("invalid blow-up plan: {0}")]
    InvalidPlan(String),
    #[error("orbit exceeded {limit} canonical forms")]
    OrbitTruncated { limit: usize },
}
