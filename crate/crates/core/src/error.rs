use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(i64),

    #[error("weight set must be non-empty")]
    EmptyWeightSet,

    #[error("empty sequence has no weighted zero-sum status")]
    EmptySequence,

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("exact-length constraint must be at least 1")]
    ZeroExactLength,

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("witness coefficient {value} at position {position} is outside the weight set (INVALID_MEMBER)")]
    InvalidMember { position: usize, value: u32 },

    #[error("invalid weight-set spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("invalid index {index} for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(
        "oracle budget exceeded: {needed} coefficient tuples > budget {budget}; \
         shorten the sequence or raise the budget"
    )]
    OracleBudget { needed: u128, budget: u64 },

    #[error(
        "enumeration budget exceeded for {what}: needs about {needed} engine calls \
         with {budget} remaining; largest affordable length at this modulus is {feasible_k}"
    )]
    SearchBudget {
        what: String,
        needed: u128,
        budget: u64,
        feasible_k: u32,
    },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("cache i/o failure at {path}: {reason}")]
    CacheIo { path: String, reason: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
