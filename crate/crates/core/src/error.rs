use thiserror::Error;

use crate::group::GroupSequence;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("moduli must be >= 1")]
    ZeroModulus,

    #[error("group order does not fit in 64 bits")]
    GroupTooLarge,

    #[error("mismatched groups: {left} vs {right}")]
    MismatchedGroups { left: String, right: String },

    #[error("invalid element for group {group}: {detail}")]
    InvalidElement { group: String, detail: String },

    #[error("{d} does not divide the group exponent {exponent}")]
    InvalidTorsionDivisor { d: u64, exponent: u64 },

    #[error("{given} is not the greatest prime power of the exponent (expected {expected})")]
    NotGreatestPrimePower { given: u64, expected: u64 },

    #[error("argument must be >= 1")]
    ZeroArgument,

    #[error("cannot certify a factorization of {n} with sieve limit {limit}")]
    FactorizationOutOfRange { n: u64, limit: u64 },

    #[error("group {group} is not a p-group")]
    NotPGroup { group: String },

    #[error("group {group} has rank {rank}, which exceeds {max}")]
    RankTooLarge {
        group: String,
        rank: usize,
        max: usize,
    },

    #[error("no c_{r} constant available; supply one (CLI: --cr {r}=VALUE or --fallback-c)")]
    MissingConstant { r: u32 },

    #[error("c_{r} = {value} violates the lower bound c_r >= 2^r - 1 = {min}")]
    ConstantTooSmall { r: u32, value: u64, min: u64 },

    #[error("c_{r} is exactly known and cannot be overridden")]
    ConstantFixed { r: u32 },

    #[error("group order {order} exceeds the solver cap {cap}; raise it with --cap")]
    OrderAboveCap { order: u64, cap: u64 },

    #[error("cap {cap} exceeds 256; acknowledge the cost with --i-know")]
    CapNeedsAck { cap: u64 },

    #[error("group exponent {exponent} exceeds the {max}-bit length masks of the short-sum state")]
    ExponentTooLarge { exponent: u64, max: u64 },

    #[error("sequence of length {len} is shorter than the required length {required}")]
    SequenceTooShort { len: u64, required: u64 },

    #[error(
        "eta bound violated: a projected sequence of length {len} >= {bound} \
         ({provenance}) has no zero-sum subsequence of length <= {max_len}; \
         this falsifies the supplied bound"
    )]
    EtaBoundViolation {
        bound: u64,
        provenance: String,
        max_len: u64,
        len: u64,
        projected: GroupSequence,
    },

    #[error("group does not have the required L + C_n^r shape: {detail}")]
    BadShape { detail: String },

    #[error("inconsistent bound report: {detail}")]
    InconsistentReport { detail: String },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
