use std::fmt;

use thiserror::Error;

/// A single broken grammar invariant, as reported by [`crate::Slp::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoVariables,
    EmptyAlphabet,
    AlphabetSize { expected: usize, found: usize },
    StartNotVariable { start: u64 },
    SymbolOutOfRange { var: u32, symbol: u64 },
    Cycle { var: u32 },
    Unreachable { var: u32 },
    LengthOverflow { var: u32 },
    TooShort { len: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVariables => write!(f, "grammar has no variables"),
            Violation::EmptyAlphabet => write!(f, "alphabet is empty"),
            Violation::AlphabetSize { expected, found } => {
                write!(f, "alphabet lists {found} bytes, expected {expected}")
            }
            Violation::StartNotVariable { start } => {
                write!(f, "start symbol {start} is not a variable")
            }
            Violation::SymbolOutOfRange { var, symbol } => {
                write!(f, "rule of variable {var} uses out-of-range symbol {symbol}")
            }
            Violation::Cycle { var } => write!(f, "cycle at variable {var}"),
            Violation::Unreachable { var } => {
                write!(f, "variable {var} is unreachable from start")
            }
            Violation::LengthOverflow { var } => {
                write!(f, "expansion length of variable {var} exceeds 64 bits")
            }
            Violation::TooShort { len } => {
                write!(f, "derived string has length {len}, at least 2 required")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grammar: {}", join(.0))]
    InvalidGrammar(Vec<Violation>),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("text of length {0} is too short, at least 2 bytes required")]
    TextTooShort(usize),

    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: u64, len: u64 },

    #[error("range {p}..={q} out of bounds for length {len}")]
    RangeOutOfBounds { p: u64, q: u64, len: u64 },

    #[error("prefix sums must be positive and strictly increasing (index {index})")]
    NotIncreasing { index: usize },

    #[error("no self-consistent path order for the chosen endpoints; violating adjacent paths: {pairs:?}")]
    NoMonotoneOrder { pairs: Vec<(usize, usize)> },

    #[error("path count overflow at symbol {0}")]
    PathCountOverflow(u32),

    #[error("child query on leaf {0}")]
    LeafHasNoChild(usize),

    #[error("child index {index} exceeds degree {degree}")]
    ChildOutOfRange { index: usize, degree: usize },

    #[error("corrupt structure: {0}")]
    Corrupt(String),

    #[error("container: {0}")]
    Container(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
