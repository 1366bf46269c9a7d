use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word: length must be at least 1")]
    EmptyWord,

    /// A token of a textual word could not be read as a non-negative integer.
    #[error("position {position}: cannot parse {token:?} as a non-negative integer")]
    Parse { position: usize, token: String },

    #[error("position {position}: value {value} is outside 1..={n}")]
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("position {position}: value {value} already occurs at position {first}")]
    Repeated {
        position: usize,
        value: usize,
        first: usize,
    },

    /// `s_i <= i - 1` violated.
    #[error("position {position}: entry {value} exceeds the subexcedant bound {bound}")]
    NotSubexcedant {
        position: usize,
        value: usize,
        bound: usize,
    },

    #[error("n = {n} is outside the enumeration range 1..={cap}")]
    EnumerationCap { n: usize, cap: usize },

    /// Broken internal invariant. Never produced for valid input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
