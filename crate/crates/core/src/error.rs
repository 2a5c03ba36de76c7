use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedType { family: char, rank: usize },

    #[error("simple index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },

    #[error("elements belong to different root systems ({left} vs {right})")]
    MismatchedSystems { left: String, right: String },

    #[error("word of length {len} exceeds the enumeration guard of {max} letters")]
    WordTooLong { len: usize, max: usize },

    #[error("word {word} is not reduced; its product has reduced word {reduced}")]
    NotReduced { word: String, reduced: String },

    #[error("unknown letter {0:?} in word")]
    BadLetter(char),

    #[error("v is not below w in the Bruhat order")]
    NotComparable,

    #[error("subexpression is not distinguished (violated at position {position}); its cell is empty")]
    EmptyCell { position: usize },

    #[error("subexpressions belong to different words")]
    WordMismatch,

    #[error("invalid diagram twist: {0}")]
    InvalidTwist(String),

    #[error("character is not regular: trivial on the orbit of simple root {}", .orbit + 1)]
    NotRegular { orbit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, limit {limit}")]
    BudgetExceeded { what: String, needed: u128, limit: u128 },

    #[error("unsupported field order {0}")]
    UnsupportedField(u64),

    #[error("character is not trivial on the derived subgroup")]
    NotTrivialOnDerived,

    #[error("character table is not a homomorphism")]
    NotLinear,
}

pub type Result<T> = std::result::Result<T, Error>;
