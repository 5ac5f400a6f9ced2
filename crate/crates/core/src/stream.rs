//! Possibly-infinite fractional digit sequences.
//!
//! A [`DigitStream`] answers "what is the digit at position `k`?" for 1-based
//! fractional positions, and carries tail metadata: eventually all zeros,
//! eventually all `b-1`, or unknown. Streams represent values in `[0, 1]`
//! (the all-max stream sums to exactly 1).
//!
//! Three kinds of stream exist: a finite digit prefix followed by a constant
//! tail digit, the terminating-or-repeating expansion of an exact rational,
//! and an external position oracle (used for the irrational constants).

use std::fmt;
use std::sync::Arc;

use crate::error::StreamError;
use crate::numeral::{big_to_digits, is_writable, Base, EndingConvention, RationalValue, WritableNumber};

/// Tail classification of a digit stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// All digits at positions `>= from` are zero.
    EventuallyZero { from: u64 },
    /// All digits at positions `>= from` are the maximal digit `b - 1`.
    EventuallyMax { from: u64 },
    Unknown,
}

/// A position oracle producing guaranteed-correct digits. Implementations
/// must behave as pure functions: repeated queries agree, regardless of
/// query order or interleaving.
pub trait PositionOracle: Send + Sync {
    fn base(&self) -> Base;
    /// Digit at 1-based fractional position `pos`.
    fn digit_at(&self, pos: u64) -> u32;
    fn describe(&self) -> String;
}

#[derive(Clone)]
enum StreamKind {
    /// Digits at positions `1..tail_from`, then `tail_digit` forever.
    Constant {
        digits: Vec<u32>,
        tail_digit: u32,
        tail_from: u64,
    },
    /// Terminating-or-repeating expansion of a rational in `[0, 1)`,
    /// digit k = floor(x * b^k) mod b (exactly what long division yields).
    LongDivision { value: RationalValue },
    Oracle(Arc<dyn PositionOracle>),
}

/// A fractional digit sequence: `0.d1 d2 d3 ...` in some base.
#[derive(Clone)]
pub struct DigitStream {
    base: Base,
    kind: StreamKind,
}

impl DigitStream {
    /// Lift a finite writable number to a stream: its fractional digits, then
    /// zeros. The number must be purely fractional (integer part zero).
    pub fn of_writable(w: &WritableNumber) -> Result<DigitStream, StreamError> {
        if !w.is_fractional() {
            return Err(StreamError::ValueOutOfRange(w.to_string()));
        }
        let mut digits = w.fractional_digits().to_vec();
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let tail_from = digits.len() as u64 + 1;
        Ok(DigitStream {
            base: w.base(),
            kind: StreamKind::Constant {
                digits,
                tail_digit: 0,
                tail_from,
            },
        })
    }

    /// The requested-ending representation of a finite writable number.
    ///
    /// `ZeroEnding` is the identity lift. `MaxDigitEnding` produces the
    /// equivalent string with an eventual constant tail of `b - 1` (so `0.1`
    /// in base 2 becomes `0.0111...`); it exists for values in `(0, 1]` only —
    /// zero has no max-digit-ending form.
    pub fn of_writable_with_ending(
        w: &WritableNumber,
        ending: EndingConvention,
    ) -> Result<DigitStream, StreamError> {
        match ending {
            EndingConvention::ZeroEnding => DigitStream::of_writable(w),
            EndingConvention::MaxDigitEnding => {
                if w.is_zero() {
                    return Err(StreamError::NoSuchRepresentation);
                }
                let canon = w.canonical();
                let base = w.base();
                let digits: Vec<u32> = if canon.is_fractional() {
                    // Decrement the last significant digit, keep its position.
                    let mut d = canon.fractional_digits().to_vec();
                    if d == [0] {
                        return Err(StreamError::NoSuchRepresentation);
                    }
                    let last = d.last_mut().expect("canonical fraction is nonempty");
                    *last -= 1;
                    d
                } else if canon.integer_digits() == [1] && canon.fraction_digit(1) == 0 {
                    // 1.0 becomes 0.(b-1)(b-1)... with no significant prefix.
                    Vec::new()
                } else {
                    return Err(StreamError::ValueOutOfRange(w.to_string()));
                };
                let tail_from = digits.len() as u64 + 1;
                Ok(DigitStream {
                    base,
                    kind: StreamKind::Constant {
                        digits,
                        tail_digit: base.max_digit(),
                        tail_from,
                    },
                })
            }
        }
    }

    /// Exact expansion of a rational in `[0, 1)`. Writable values get a
    /// terminating stream with an `EventuallyZero` tail; the rest keep their
    /// repeating expansion with tail `Unknown` and an exact value hint.
    pub fn of_rational(x: &RationalValue, base: Base) -> Result<DigitStream, StreamError> {
        if x.numerator() >= x.denominator() && !x.is_zero() {
            return Err(StreamError::ValueOutOfRange(x.to_string()));
        }
        if is_writable(x, base) {
            let w = WritableNumber::from_rational(x, base).expect("checked writable");
            DigitStream::of_writable(&w)
        } else {
            Ok(DigitStream {
                base,
                kind: StreamKind::LongDivision { value: x.clone() },
            })
        }
    }

    /// Like [`DigitStream::of_rational`] but honoring an ending convention
    /// for writable values (`1/10` in base 10 under `MaxDigitEnding` is
    /// `0.0999...`). Non-writable rationals have a single expansion, which is
    /// returned unchanged.
    pub fn of_rational_with_ending(
        x: &RationalValue,
        base: Base,
        ending: EndingConvention,
    ) -> Result<DigitStream, StreamError> {
        if is_writable(x, base) && !x.is_zero() {
            let w = WritableNumber::from_rational(x, base).expect("checked writable");
            DigitStream::of_writable_with_ending(&w, ending)
        } else {
            DigitStream::of_rational(x, base)
        }
    }

    /// The raw digit-formula expansion of a rational in `[0, 1)`, without the
    /// writability shortcut. Used to cross-check that long division agrees
    /// with rendering on writable inputs.
    pub fn long_division(x: &RationalValue, base: Base) -> Result<DigitStream, StreamError> {
        if x.numerator() >= x.denominator() && !x.is_zero() {
            return Err(StreamError::ValueOutOfRange(x.to_string()));
        }
        Ok(DigitStream {
            base,
            kind: StreamKind::LongDivision { value: x.clone() },
        })
    }

    pub fn from_oracle(oracle: Arc<dyn PositionOracle>) -> DigitStream {
        DigitStream {
            base: oracle.base(),
            kind: StreamKind::Oracle(oracle),
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Digit at 1-based position `pos`. Deterministic: repeated queries, in
    /// any order, yield the same digit.
    pub fn digit_at(&self, pos: u64) -> u32 {
        assert!(pos >= 1, "stream positions are 1-based");
        match &self.kind {
            StreamKind::Constant {
                digits,
                tail_digit,
                tail_from,
            } => {
                if pos >= *tail_from {
                    *tail_digit
                } else {
                    digits[pos as usize - 1]
                }
            }
            StreamKind::LongDivision { value } => value.fraction_digit(self.base, pos),
            StreamKind::Oracle(oracle) => oracle.digit_at(pos),
        }
    }

    /// Tail metadata, when the construction proves it.
    pub fn tail(&self) -> Tail {
        match &self.kind {
            StreamKind::Constant {
                tail_digit,
                tail_from,
                ..
            } => {
                if *tail_digit == 0 {
                    Tail::EventuallyZero { from: *tail_from }
                } else if *tail_digit == self.base.max_digit() {
                    Tail::EventuallyMax { from: *tail_from }
                } else {
                    Tail::Unknown
                }
            }
            StreamKind::LongDivision { .. } => Tail::Unknown,
            StreamKind::Oracle(_) => Tail::Unknown,
        }
    }

    /// The exact limit value, when known: prefix plus geometric tail for
    /// constant-tail streams, the rational itself for expansions.
    pub fn limit_value(&self) -> Option<RationalValue> {
        match &self.kind {
            StreamKind::Constant {
                digits,
                tail_digit,
                tail_from,
            } => {
                let prefix = fraction_value(self.base, digits);
                Some(prefix.add(&geometric_tail(self.base, *tail_digit, *tail_from)))
            }
            StreamKind::LongDivision { value } => Some(value.clone()),
            StreamKind::Oracle(_) => None,
        }
    }

    /// The finite canonical form of the limit value, when it is writable.
    pub fn finite_form(&self) -> Option<WritableNumber> {
        let value = self.limit_value()?;
        WritableNumber::from_rational(&value, self.base).ok()
    }

    /// Truncation to the first `k + 1` fractional digits, as a finite
    /// writable number (`k = 0` keeps one digit).
    pub fn truncate(&self, k: u64) -> WritableNumber {
        let count = k + 1;
        let digits: Vec<u32> = match &self.kind {
            StreamKind::LongDivision { value } => {
                // One scaled floor gives all digits at once.
                let floor = value.floor_scaled(self.base, count);
                let mut d = big_to_digits(&floor, self.base);
                while (d.len() as u64) < count {
                    d.insert(0, 0);
                }
                d
            }
            _ => (1..=count).map(|pos| self.digit_at(pos)).collect(),
        };
        WritableNumber::fraction(self.base, digits).expect("digits below base")
    }

    /// Truncation with the approximation guarantee: when the stream's limit
    /// value `x` exists, `|x - value(truncate(k))| < b^-k`.
    pub fn approximate(&self, k: u64) -> WritableNumber {
        self.truncate(k)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            StreamKind::Constant {
                digits,
                tail_digit,
                tail_from,
            } => {
                let mut s = String::from("0.");
                for &d in digits {
                    s.push_str(&d.to_string());
                }
                format!("{s}({tail_digit} from {tail_from})")
            }
            StreamKind::LongDivision { value } => format!("expansion of {value}"),
            StreamKind::Oracle(oracle) => oracle.describe(),
        }
    }
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitStream({} base {})", self.describe(), self.base)
    }
}

/// Value of a fractional digit vector `0.d1 d2 ... dk`.
fn fraction_value(base: Base, digits: &[u32]) -> RationalValue {
    if digits.is_empty() {
        return RationalValue::zero();
    }
    let num = crate::numeral::digits_to_big(digits, base);
    RationalValue::new(num, base.pow(digits.len() as u64)).expect("nonzero denominator")
}

/// Exact value of a constant tail: `sum over i >= from of d * b^-i`.
pub fn geometric_tail(base: Base, digit: u32, from: u64) -> RationalValue {
    if digit == 0 {
        return RationalValue::zero();
    }
    // d * b^(1-from) / (b - 1)
    let num = num_bigint::BigUint::from(digit);
    let den = base.pow(from - 1) * num_bigint::BigUint::from(base.get() - 1);
    RationalValue::new(num, den).expect("nonzero denominator")
}

/// The spec-level conversion operation: re-represent a finite writable
/// number under the requested ending convention.
pub fn convert_ending(
    w: &WritableNumber,
    target: EndingConvention,
) -> Result<DigitStream, StreamError> {
    DigitStream::of_writable_with_ending(w, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeral::Base;

    fn rat(n: u64, d: u64) -> RationalValue {
        RationalValue::from_u64(n, d).unwrap()
    }

    fn w(text: &str, base: u32) -> WritableNumber {
        WritableNumber::parse(text, Base::new(base).unwrap()).unwrap()
    }

    fn digits(s: &DigitStream, count: u64) -> Vec<u32> {
        (1..=count).map(|p| s.digit_at(p)).collect()
    }

    #[test]
    fn writable_lift_has_zero_tail() {
        let s = DigitStream::of_writable(&w("0.11", 2)).unwrap();
        assert_eq!(digits(&s, 4), vec![1, 1, 0, 0]);
        assert_eq!(s.tail(), Tail::EventuallyZero { from: 3 });
        assert_eq!(s.limit_value(), Some(rat(3, 4)));
    }

    #[test]
    fn zero_lift() {
        let s = DigitStream::of_writable(&w("0.0", 2)).unwrap();
        assert_eq!(digits(&s, 3), vec![0, 0, 0]);
        assert_eq!(s.tail(), Tail::EventuallyZero { from: 1 });
    }

    #[test]
    fn max_ending_of_one_half_binary() {
        let s = convert_ending(&w("0.1", 2), EndingConvention::MaxDigitEnding).unwrap();
        assert_eq!(digits(&s, 5), vec![0, 1, 1, 1, 1]);
        assert_eq!(s.tail(), Tail::EventuallyMax { from: 2 });
        assert_eq!(s.limit_value(), Some(rat(1, 2)));
    }

    #[test]
    fn max_ending_of_one_tenth_decimal() {
        let s = convert_ending(&w("0.1", 10), EndingConvention::MaxDigitEnding).unwrap();
        assert_eq!(digits(&s, 4), vec![0, 9, 9, 9]);
        assert_eq!(s.limit_value(), Some(rat(1, 10)));
    }

    #[test]
    fn zero_ending_is_identity() {
        let s = convert_ending(&w("0.1", 2), EndingConvention::ZeroEnding).unwrap();
        assert_eq!(digits(&s, 3), vec![1, 0, 0]);
        assert_eq!(s.limit_value(), Some(rat(1, 2)));
    }

    #[test]
    fn zero_has_no_max_ending() {
        assert!(matches!(
            convert_ending(&w("0.0", 2), EndingConvention::MaxDigitEnding),
            Err(StreamError::NoSuchRepresentation)
        ));
    }

    #[test]
    fn max_ending_of_one() {
        let s = convert_ending(&w("1.0", 2), EndingConvention::MaxDigitEnding).unwrap();
        assert_eq!(digits(&s, 3), vec![1, 1, 1]);
        assert_eq!(s.limit_value(), Some(rat(1, 1)));
    }

    #[test]
    fn truncate_keeps_k_plus_one_digits() {
        let s = convert_ending(&w("0.1", 2), EndingConvention::MaxDigitEnding).unwrap();
        assert_eq!(s.truncate(2).to_string(), "0.011");

        let zeros = DigitStream::of_writable(&w("0.0", 2)).unwrap();
        assert_eq!(zeros.truncate(5).to_string(), "0.000000");
    }

    #[test]
    fn rational_stream_repeats() {
        let s = DigitStream::of_rational(&rat(2, 3), Base::DECIMAL).unwrap();
        assert_eq!(digits(&s, 5), vec![6, 6, 6, 6, 6]);
        assert_eq!(s.tail(), Tail::Unknown);
        assert_eq!(s.limit_value(), Some(rat(2, 3)));
    }

    #[test]
    fn rational_stream_of_writable_value_terminates() {
        let s = DigitStream::of_rational(&rat(1, 2), Base::BINARY).unwrap();
        assert_eq!(digits(&s, 4), vec![1, 0, 0, 0]);
        assert_eq!(s.tail(), Tail::EventuallyZero { from: 2 });
    }

    #[test]
    fn long_division_matches_rendering_on_writable() {
        for (n, d) in [(1, 2), (3, 4), (5, 8), (1, 10), (7, 100)] {
            let x = rat(n, d);
            for base in [2u32, 10] {
                let base = Base::new(base).unwrap();
                if !is_writable(&x, base) {
                    continue;
                }
                let raw = DigitStream::long_division(&x, base).unwrap();
                let lifted =
                    DigitStream::of_writable(&WritableNumber::from_rational(&x, base).unwrap())
                        .unwrap();
                for pos in 1..=20 {
                    assert_eq!(raw.digit_at(pos), lifted.digit_at(pos), "{x} pos {pos}");
                }
            }
        }
    }

    #[test]
    fn approximation_bound_holds_for_rationals() {
        // |x - value(truncate(k))| < b^-k, exact rational comparison.
        for (n, d) in [(1, 3), (2, 3), (1, 7), (5, 11), (13, 17)] {
            let x = rat(n, d);
            for base in [2u32, 10] {
                let base = Base::new(base).unwrap();
                let s = DigitStream::of_rational(&x, base).unwrap();
                for k in [0u64, 1, 5, 20] {
                    let approx = s.approximate(k).value();
                    let err = if x >= approx { x.sub(&approx) } else { approx.sub(&x) };
                    let bound = RationalValue::new(1u32.into(), base.pow(k)).unwrap();
                    assert!(err < bound, "error {err} not below {bound}");
                }
            }
        }
    }

    #[test]
    fn geometric_tail_value() {
        // 0.0111... in base 2: tail of 1s from position 2 sums to 1/2.
        assert_eq!(geometric_tail(Base::BINARY, 1, 2), rat(1, 2));
        // 0.0999... in base 10: tail of 9s from position 2 sums to 1/10.
        assert_eq!(geometric_tail(Base::DECIMAL, 9, 2), rat(1, 10));
    }

    #[test]
    fn finite_form_of_max_tail() {
        let s = convert_ending(&w("0.101", 2), EndingConvention::MaxDigitEnding).unwrap();
        assert_eq!(s.finite_form().unwrap().to_string(), "0.101");
    }
}
