//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by numeral construction, valuation, and rendering.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumeralError {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u32),
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("digit string must have at least one digit on each side of the radix point")]
    EmptyDigits,
    #[error("cannot parse {0:?} as a positional numeral")]
    Parse(String),
    #[error("value {0} has no finite digit expansion in base {1}")]
    NotWritable(String, u32),
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("no digit symbol for value {0} (default symbol table covers bases up to 36)")]
    SymbolOutOfRange(u32),
}

/// Errors raised by digit-stream construction and conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("zero has no max-digit-ending representation")]
    NoSuchRepresentation,
    #[error("a digit stream holds only fractional digits; value {0} is out of range for the requested conversion")]
    ValueOutOfRange(String),
    #[error("stream position indices start at 1")]
    PositionZero,
}

/// Errors raised by enumeration codecs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("applicative blocks are square: expected symbols = max length, got ({0}, {1})")]
    InvalidShape(u64, u64),
    #[error("symbol {0} is outside the alphabet 1..={1}")]
    OutOfAlphabet(u32, u64),
    #[error("index {0} is outside the enumeration range")]
    OutOfRange(String),
}

/// Errors raised by the diagonal-method engine and shuffles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("replacement rule {rule} requires base {expected}, list has base {actual}")]
    RuleBaseMismatch {
        rule: String,
        expected: u32,
        actual: u32,
    },
    #[error("prefix is not an entry of list {0}")]
    NotFound(String),
    #[error("list {0} carries no rank function")]
    RankUnavailable(String),
    #[error("no pool entry with digit {digit} at position {position} within the scan budget")]
    PoolExhausted { position: u64, digit: u32 },
    #[error("pinned value {0} not present in the pool")]
    PinNotInPool(String),
    #[error("pinned line {0} outside the requested prefix")]
    PinOutOfRange(u64),
    #[error(transparent)]
    Numeral(#[from] NumeralError),
    #[error(transparent)]
    Stream(#[from] StreamError),
}
