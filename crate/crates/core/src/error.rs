use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("generator index 0 at byte {position}; generators are numbered from 1")]
    ZeroIndex { position: usize },
    #[error("generator x{index} exceeds the generator count {generators}")]
    GeneratorOutOfRange { index: u32, generators: usize },
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("braid letter {index} is out of range for {strands} strands (valid: 1..={max})", max = .strands.saturating_sub(1))]
    StrandOutOfRange { index: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("repetition exponent must be at least 1, got {0}")]
    BadExponent(i64),
    #[error("insert position {position} is beyond the braid length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("move order must be at least 1")]
    ZeroMoveOrder,
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("truncation degree must be at least 1")]
    ZeroDegree,
    #[error("series moduli differ ({0} vs {1})")]
    ModulusMismatch(u32, u32),
    #[error("series truncation degrees differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("monomial of degree {degree} lies beyond the truncation degree {trunc}")]
    BeyondTruncation { degree: usize, trunc: usize },
    #[error("series would exceed the term cap of {cap}")]
    Capacity { cap: usize },
    #[error("oracle guard exceeded: {0}")]
    OracleGuard(String),
}
