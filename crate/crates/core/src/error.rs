use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {constant} is not a unit, series cannot be inverted")]
    NonUnitConstant { constant: String },

    #[error("index {index} lies past truncation order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("{len} coefficients do not fit in a series of order {order}")]
    TooManyCoefficients { len: usize, order: usize },

    #[error("residue {residue} is not in [0, {modulus})")]
    InvalidResidue { modulus: usize, residue: usize },

    #[error("progression {modulus}n+{residue} has no terms at or below order {order}")]
    EmptyProgression {
        modulus: usize,
        residue: usize,
        order: usize,
    },

    #[error("dilation factor must be positive")]
    ZeroDilation,

    #[error("modulus {0} outside the supported range [2, 2^32]")]
    BadModulus(u64),
}

/// Syntax error with a byte offset into the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {}", .position + 1)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError {
            message: message.into(),
            position,
        }
    }

    /// Renders the input with a caret under the offending column.
    pub fn caret(&self, input: &str) -> String {
        let col = input[..self.position.min(input.len())].chars().count();
        format!("{input}\n{}^ {}", " ".repeat(col), self.message)
    }
}
