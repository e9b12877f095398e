use thiserror::Error;

use crate::exact_arith::ArithError;
use crate::sequences::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("symbol {0} occurs twice in the alphabet")]
    DuplicateSymbol(Symbol),
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(Symbol),
    #[error("alphabets overlap on symbol {0}")]
    AlphabetOverlap(Symbol),
    #[error("expected a binary stream, got {0} letters")]
    NotBinary(usize),
    #[error("invalid frequency vector: {0}")]
    Frequency(String),
    #[error("invalid mechanical parameters: {0}")]
    Mechanical(String),
    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: usize,
        expected: String,
    },
    #[error("letter {letter}: gaps {first},{second}")]
    NotConstantGap {
        letter: Symbol,
        first: usize,
        second: usize,
    },
    #[error("malformed word: {0}")]
    WordFormat(String),
    #[error("malformed generator spec `{0}`")]
    GeneratorSpec(String),
    #[error("{0} ran out of symbols")]
    Exhausted(&'static str),
    #[error("empty word")]
    EmptyWord,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
