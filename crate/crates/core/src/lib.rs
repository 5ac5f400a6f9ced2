//! Exact arithmetic on positional numerals, enumeration bijections, digit
//! oracles, and a configurable diagonal-method engine.
//!
//! The crate is organized around a few small value types:
//!
//! - [`WritableNumber`]: a finite digit string in base `b` with a radix point.
//! - [`RationalValue`]: the exact reduced fraction a digit string denotes.
//! - [`DigitStream`]: a possibly-infinite fractional digit sequence given by
//!   a position oracle plus tail metadata.
//! - [`ListSpec`]: an enumerated list of digit streams with an optional exact
//!   rank function — the input the diagonal method consumes.
//! - [`DMConfig`] / [`DMReport`]: a diagonal-method run and its outcome.
//!
//! Every value path is integer arithmetic on big integers; there is no
//! floating point anywhere.

pub mod diagonal;
pub mod enumerate;
pub mod error;
pub mod lists;
pub mod numeral;
pub mod oracles;
pub mod shuffle;
pub mod stream;

pub use diagonal::{DMConfig, DMReport, Membership, ReplacementRule, TailVerdict, TraceRow};
pub use error::{DiagonalError, EnumerationError, NumeralError, StreamError};
pub use lists::{DiagonalTail, ListSpec};
pub use numeral::{is_writable, Base, EndingConvention, RationalValue, SymbolTable, WritableNumber};
pub use oracles::ConstantName;
pub use shuffle::Shuffle;
pub use stream::{DigitStream, Tail};
