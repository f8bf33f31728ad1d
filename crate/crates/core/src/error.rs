use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index ({j},{i}) out of range for rank {rank}")]
    IndexOutOfRange { rank: usize, j: usize, i: usize },
    #[error("generator indices must differ, got ({0},{0})")]
    EqualIndices(usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("sub-rank {k} exceeds rank {rank}")]
    SubRankTooLarge { rank: usize, k: usize },
    #[error("element uses index {index} which exceeds source rank {rank}")]
    IndexExceedsRank { index: usize, rank: usize },
    #[error("Pfaffian needs an even number of indices, got {0}")]
    OddPfaffian(usize),
    #[error("Pfaffian index {0} repeated")]
    RepeatedIndex(usize),
    #[error("weight {weight:?} is not dominant for SO({group})")]
    NonDominant { group: usize, weight: Vec<i64> },
    #[error("invalid Gelfand-Tsetlin coefficient request: {0}")]
    InvalidCoefficient(String),
    #[error("element is not in the required subalgebra: {0}")]
    NotInSubalgebra(String),
    #[error("no dominant SO({group}) weight interleaves {lambda:?} and {shifted:?}")]
    NoEmbeddingWeight { group: usize, lambda: Vec<i64>, shifted: Vec<i64> },
    #[error("shift index {ell} not admissible for n = {n}")]
    InvalidShift { n: usize, ell: i64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
