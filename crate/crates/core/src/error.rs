use thiserror::Error;

use crate::oracle::SearchResult;

/// Errors produced by the automata, minimization and cover routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("missing transition for state {state} on letter {letter}")]
    IncompleteTransition { state: usize, letter: usize },
    #[error("index out of range in {0}")]
    IndexOutOfRange(&'static str),
    #[error("de Bruijn order {0} is larger than the supported maximum of {max}", max = crate::debruijn::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("start offset {offset} is out of range for a word of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },
    #[error("operation requires a unary automaton, got alphabet size {0}")]
    NotUnary(usize),
    #[error("letter {letter} is outside the alphabet of size {alphabet_size}")]
    BadLetter { letter: usize, alphabet_size: usize },
    #[error("partition is not stable under the transition function: {0}")]
    UnstablePartition(String),
    #[error("trace mismatch at decision {index}: {reason}")]
    TraceMismatch { index: usize, reason: String },
    #[error("automata have different alphabet sizes ({0} vs {1})")]
    AlphabetMismatch(usize, usize),
    #[error("search budget of {budget} runs exhausted (best mass so far {})", .best.objective)]
    SearchBudgetExceeded { budget: u64, best: Box<SearchResult> },
    #[error("search guard: {states} states exceeds the limit of {limit}")]
    SearchTooLarge { states: usize, limit: usize },
    #[error("cyclic enumeration size {0} exceeds the limit of 16")]
    SizeTooLarge(usize),
    #[error("state {0} is unreachable from the start state")]
    UnreachableState(usize),
    #[error("block {block} contains dissimilar states {p} and {q}")]
    NotSimilarBlock { block: usize, p: usize, q: usize },
    #[error("length {length} exceeds the cover bound l = {l}")]
    LengthExceedsL { length: usize, l: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
