use thiserror::Error;

/// Errors raised by the algebra, matching, greedy and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group `{0}`: expected factors like `Z13` or `Z` joined by `x`")]
    MalformedGroup(String),

    #[error("group must have at least one factor")]
    EmptyGroup,

    #[error("modulus {0} is negative")]
    NegativeModulus(String),

    #[error("malformed element `{0}`")]
    MalformedElement(String),

    #[error("malformed set literal `{0}`")]
    MalformedSet(String),

    #[error("element has {found} coordinates, group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("coordinate {value} is not a canonical residue modulo {modulus}")]
    NotCanonical { value: String, modulus: String },

    #[error("coordinate overflow in free factor")]
    Overflow,

    #[error("label `{0}` is not in the carrier")]
    UnknownLabel(String),

    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),

    #[error("left cancellation fails: {a} ⊕ {b1} = {a} ⊕ {b2}")]
    CancellationViolation { a: String, b1: String, b2: String },

    #[error("right cancellation fails within a step: {a1} ⊕ {b} = {a2} ⊕ {b}")]
    StepCollision { a1: String, a2: String, b: String },

    #[error("sets must be nonempty")]
    EmptySet,

    #[error("|A| = {a} but |B| = {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("not a bijection A -> B: {0}")]
    NotABijection(String),

    #[error("not a matching: {a} ⊕ {b} lies in A")]
    NotAMatching { a: String, b: String },

    #[error("weak condition fails: A ∩ (A + B) is nonempty")]
    WeakConditionFails,

    #[error("structural anomaly: {0}")]
    StructuralAnomaly(String),

    #[error("|A| = {size} exceeds the enumeration bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },

    #[error("infeasible sweep: {0}")]
    InfeasibleSweep(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
