use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },

    #[error("elements must be strictly increasing and distinct")]
    NotStrictlyIncreasing,

    #[error("expected a {expected}-subset, got {actual} elements")]
    WrongSize { expected: u32, actual: u32 },

    #[error("rank {rank} out of range for C({n},{k}) = {total}")]
    RankOutOfRange { rank: u64, n: u32, k: u32, total: u64 },

    #[error("segment size {m} exceeds C({n},{k}) = {total}")]
    SegmentOutOfRange { m: u64, n: u32, k: u32, total: u64 },

    #[error("ground sets differ: n = {left} vs n = {right}")]
    GroundSetMismatch { left: u32, right: u32 },

    #[error("parameter mismatch: ({n1},{k1}) vs ({n2},{k2})")]
    ParamsMismatch { n1: u32, k1: u32, n2: u32, k2: u32 },

    #[error("families are not cross-intersecting")]
    NotCrossIntersecting,

    #[error("no saturating matching: maximum matching has size {found}, side has {needed} vertices")]
    NoSaturatingMatching { found: usize, needed: usize },

    #[error("sweep configuration rejected: {0}")]
    ConfigBounds(String),

    #[error("solver failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
