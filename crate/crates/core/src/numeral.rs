//! Positional numerals with exact rational values.
//!
//! A [`WritableNumber`] is a finite digit string in some base `b >= 2` with a
//! radix point: the numbers that can literally be written down in positional
//! fractional notation. Its exact value is a [`RationalValue`], a reduced
//! non-negative fraction. Everything here is integer arithmetic; no floating
//! point is involved anywhere.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::NumeralError;

/// A positional number base, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);
    pub const DECIMAL: Base = Base(10);

    pub fn new(b: u32) -> Result<Base, NumeralError> {
        if b < 2 {
            return Err(NumeralError::BaseTooSmall(b));
        }
        Ok(Base(b))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest digit value, `b - 1`.
    pub fn max_digit(self) -> u32 {
        self.0 - 1
    }

    pub fn to_biguint(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `b^k` as a big integer.
    pub fn pow(self, k: u64) -> BigUint {
        self.to_biguint().pow(k as u32)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the two digit-string representations of the same value a list or
/// conversion should use: terminating (`...d000...`) or with an eventual
/// constant tail of the maximal digit (`...(d-1)(b-1)(b-1)...`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndingConvention {
    ZeroEnding,
    MaxDigitEnding,
}

impl fmt::Display for EndingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndingConvention::ZeroEnding => write!(f, "0-ending"),
            EndingConvention::MaxDigitEnding => write!(f, "max-digit-ending"),
        }
    }
}

/// An exact non-negative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalValue {
    num: BigUint,
    den: BigUint,
}

impl RationalValue {
    pub fn new(num: BigUint, den: BigUint) -> Result<RationalValue, NumeralError> {
        if den.is_zero() {
            return Err(NumeralError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        Ok(RationalValue {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<RationalValue, NumeralError> {
        RationalValue::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn from_integer(n: BigUint) -> RationalValue {
        RationalValue {
            num: n,
            den: BigUint::one(),
        }
    }

    pub fn zero() -> RationalValue {
        RationalValue::from_integer(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn add(&self, other: &RationalValue) -> RationalValue {
        RationalValue::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
        .expect("nonzero denominators")
    }

    /// `self - other`; caller must ensure `self >= other`.
    pub fn sub(&self, other: &RationalValue) -> RationalValue {
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        assert!(left >= right, "RationalValue::sub would underflow");
        RationalValue::new(left - right, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn mul(&self, other: &RationalValue) -> RationalValue {
        RationalValue::new(&self.num * &other.num, &self.den * &other.den)
            .expect("nonzero denominators")
    }

    /// Integer part and fractional remainder: `self = floor + frac`, `frac < 1`.
    pub fn split_integer(&self) -> (BigUint, RationalValue) {
        let floor = &self.num / &self.den;
        let rem = &self.num % &self.den;
        (
            floor,
            RationalValue::new(rem, self.den.clone()).expect("nonzero denominator"),
        )
    }

    /// `floor(self * b^k)`: the integer whose base-`b` digits are the first
    /// `k` fractional digits of `self` (for `self < 1`).
    pub fn floor_scaled(&self, base: Base, k: u64) -> BigUint {
        (&self.num * base.pow(k)) / &self.den
    }

    /// The fractional digit at 1-based position `pos` of the terminating
    /// (0-ending) expansion, for values in `[0, 1)`.
    pub fn fraction_digit(&self, base: Base, pos: u64) -> u32 {
        debug_assert!(self.num < self.den || self.is_zero());
        let floor = (&self.num * base.pow(pos)) / &self.den;
        u32::try_from(&(floor % base.to_biguint())).expect("digit below base")
    }
}

impl PartialOrd for RationalValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Digit symbols used when rendering numerals as text. The default table is
/// `0-9` then `a-z`, covering bases up to 36.
#[derive(Clone)]
pub struct SymbolTable {
    symbols: Arc<Vec<char>>,
}

impl SymbolTable {
    pub fn standard() -> SymbolTable {
        let mut symbols: Vec<char> = ('0'..='9').collect();
        symbols.extend('a'..='z');
        SymbolTable {
            symbols: Arc::new(symbols),
        }
    }

    pub fn custom(symbols: Vec<char>) -> SymbolTable {
        SymbolTable {
            symbols: Arc::new(symbols),
        }
    }

    pub fn render(&self, digit: u32) -> Result<char, NumeralError> {
        self.symbols
            .get(digit as usize)
            .copied()
            .ok_or(NumeralError::SymbolOutOfRange(digit))
    }

    pub fn parse(&self, c: char) -> Option<u32> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u32)
    }
}

impl Default for SymbolTable {
    fn default() -> Self {
        SymbolTable::standard()
    }
}

/// A finite digit string in base `b` with a radix point.
///
/// Both sides of the point always hold at least one digit, so zero is `0.0`
/// and three halves in binary is `1.1`. Trailing fractional zeros are allowed
/// (diagonal prefixes keep their length); [`WritableNumber::canonical`]
/// strips them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WritableNumber {
    base: Base,
    /// Most significant first; no leading zeros except a single `0`.
    integer_digits: Vec<u32>,
    /// Position 1 first (immediately after the point); never empty.
    fractional_digits: Vec<u32>,
}

impl WritableNumber {
    pub fn new(
        base: Base,
        integer_digits: Vec<u32>,
        fractional_digits: Vec<u32>,
    ) -> Result<WritableNumber, NumeralError> {
        if integer_digits.is_empty() || fractional_digits.is_empty() {
            return Err(NumeralError::EmptyDigits);
        }
        for &d in integer_digits.iter().chain(&fractional_digits) {
            if d >= base.get() {
                return Err(NumeralError::DigitOutOfRange {
                    digit: d,
                    base: base.get(),
                });
            }
        }
        if integer_digits.len() > 1 && integer_digits[0] == 0 {
            return Err(NumeralError::Parse(
                "leading zeros in the integer part".into(),
            ));
        }
        Ok(WritableNumber {
            base,
            integer_digits,
            fractional_digits,
        })
    }

    /// A purely fractional number `0.d1 d2 ... dk`.
    pub fn fraction(base: Base, fractional_digits: Vec<u32>) -> Result<WritableNumber, NumeralError> {
        WritableNumber::new(base, vec![0], fractional_digits)
    }

    /// Zero in the given base, rendered `0.0`.
    pub fn zero(base: Base) -> WritableNumber {
        WritableNumber {
            base,
            integer_digits: vec![0],
            fractional_digits: vec![0],
        }
    }

    /// Parse `123.5` style strings with the standard symbol table. A string
    /// without a radix point is read as an integer.
    pub fn parse(text: &str, base: Base) -> Result<WritableNumber, NumeralError> {
        let table = SymbolTable::standard();
        let mut parts = text.splitn(2, '.');
        let int_part = parts.next().unwrap_or("");
        let frac_part = parts.next().unwrap_or("0");
        let parse_digits = |s: &str| -> Result<Vec<u32>, NumeralError> {
            s.chars()
                .map(|c| table.parse(c).ok_or_else(|| NumeralError::Parse(text.into())))
                .collect()
        };
        if int_part.is_empty() || frac_part.is_empty() {
            return Err(NumeralError::Parse(text.into()));
        }
        WritableNumber::new(base, parse_digits(int_part)?, parse_digits(frac_part)?)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn integer_digits(&self) -> &[u32] {
        &self.integer_digits
    }

    pub fn fractional_digits(&self) -> &[u32] {
        &self.fractional_digits
    }

    /// Fractional digit at 1-based position `pos`; zero beyond the string.
    pub fn fraction_digit(&self, pos: u64) -> u32 {
        if pos == 0 {
            return 0;
        }
        self.fractional_digits
            .get(pos as usize - 1)
            .copied()
            .unwrap_or(0)
    }

    /// The exact value `sum of d_k * b^k` over all digit positions.
    pub fn value(&self) -> RationalValue {
        let b = self.base.to_biguint();
        let mut int_val = BigUint::zero();
        for &d in &self.integer_digits {
            int_val = int_val * &b + BigUint::from(d);
        }
        let mut frac_num = BigUint::zero();
        for &d in &self.fractional_digits {
            frac_num = frac_num * &b + BigUint::from(d);
        }
        let den = self.base.pow(self.fractional_digits.len() as u64);
        RationalValue::new(int_val * &den + frac_num, den).expect("nonzero denominator")
    }

    /// Render the exact value `x` as a canonical digit string, if one exists.
    ///
    /// Succeeds precisely when every prime factor of the reduced denominator
    /// divides the base; otherwise the expansion would not terminate.
    pub fn from_rational(x: &RationalValue, base: Base) -> Result<WritableNumber, NumeralError> {
        if !is_writable(x, base) {
            return Err(NumeralError::NotWritable(x.to_string(), base.get()));
        }
        let (int_part, mut frac) = x.split_integer();
        let integer_digits = big_to_digits(&int_part, base);
        let mut fractional_digits = Vec::new();
        let b = base.to_biguint();
        while !frac.is_zero() {
            let scaled = RationalValue::new(frac.numerator() * &b, frac.denominator().clone())
                .expect("nonzero denominator");
            let (digit, rest) = scaled.split_integer();
            fractional_digits.push(u32::try_from(&digit).expect("digit below base"));
            frac = rest;
        }
        if fractional_digits.is_empty() {
            fractional_digits.push(0);
        }
        WritableNumber::new(base, integer_digits, fractional_digits)
    }

    /// Integer part (with `.0` fraction) and fractional part (with `0.`
    /// integer); their values sum to this number's value.
    pub fn split(&self) -> (WritableNumber, WritableNumber) {
        let int = WritableNumber {
            base: self.base,
            integer_digits: self.integer_digits.clone(),
            fractional_digits: vec![0],
        };
        let frac = WritableNumber {
            base: self.base,
            integer_digits: vec![0],
            fractional_digits: self.fractional_digits.clone(),
        };
        (int, frac)
    }

    /// Strip trailing fractional zeros (keeping at least one digit) and any
    /// leading integer zeros.
    pub fn canonical(&self) -> WritableNumber {
        let mut frac = self.fractional_digits.clone();
        while frac.len() > 1 && *frac.last().unwrap() == 0 {
            frac.pop();
        }
        let mut int = self.integer_digits.clone();
        while int.len() > 1 && int[0] == 0 {
            int.remove(0);
        }
        WritableNumber {
            base: self.base,
            integer_digits: int,
            fractional_digits: frac,
        }
    }

    pub fn is_canonical(&self) -> bool {
        (self.fractional_digits.len() == 1 || *self.fractional_digits.last().unwrap() != 0)
            && (self.integer_digits.len() == 1 || self.integer_digits[0] != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.integer_digits.iter().all(|&d| d == 0)
            && self.fractional_digits.iter().all(|&d| d == 0)
    }

    /// True when the integer part is zero, i.e. the value is below 1.
    pub fn is_fractional(&self) -> bool {
        self.integer_digits.iter().all(|&d| d == 0)
    }

    pub fn render_with(&self, table: &SymbolTable) -> Result<String, NumeralError> {
        let mut out = String::new();
        for &d in &self.integer_digits {
            out.push(table.render(d)?);
        }
        out.push('.');
        for &d in &self.fractional_digits {
            out.push(table.render(d)?);
        }
        Ok(out)
    }
}

impl fmt::Display for WritableNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render_with(&SymbolTable::standard()) {
            Ok(s) => write!(f, "{s}"),
            Err(_) => Err(fmt::Error),
        }
    }
}

/// True iff `x` has a finite digit expansion in `base`: the reduced
/// denominator has no prime factor that does not divide the base.
pub fn is_writable(x: &RationalValue, base: Base) -> bool {
    let mut den = x.denominator().clone();
    let b = base.to_biguint();
    loop {
        if den.is_one() {
            return true;
        }
        let g = den.gcd(&b);
        if g.is_one() {
            return false;
        }
        while (&den % &g).is_zero() {
            den /= &g;
        }
    }
}

/// Base-`b` digits of `n`, most significant first; `0` maps to `[0]`.
pub fn big_to_digits(n: &BigUint, base: Base) -> Vec<u32> {
    if n.is_zero() {
        return vec![0];
    }
    let mut digits = Vec::new();
    let b = base.to_biguint();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&b);
        digits.push(u32::try_from(&r).expect("digit below base"));
        rest = q;
    }
    digits.reverse();
    digits
}

/// Reassemble a digit vector (most significant first) into an integer.
pub fn digits_to_big(digits: &[u32], base: Base) -> BigUint {
    let b = base.to_biguint();
    let mut n = BigUint::zero();
    for &d in digits {
        n = n * &b + BigUint::from(d);
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: u64, d: u64) -> RationalValue {
        RationalValue::from_u64(n, d).unwrap()
    }

    #[test]
    fn value_of_decimal_string() {
        let w = WritableNumber::parse("123.5", Base::DECIMAL).unwrap();
        assert_eq!(w.value(), rat(247, 2));
    }

    #[test]
    fn value_of_binary_string_matches_decimal() {
        let w = WritableNumber::parse("1111011.1", Base::BINARY).unwrap();
        assert_eq!(w.value(), rat(247, 2));
    }

    #[test]
    fn value_of_zero() {
        let w = WritableNumber::parse("0.0", Base::BINARY).unwrap();
        assert_eq!(w.value(), RationalValue::zero());
    }

    #[test]
    fn render_one_half_binary() {
        let w = WritableNumber::from_rational(&rat(1, 2), Base::BINARY).unwrap();
        assert_eq!(w.to_string(), "0.1");
    }

    #[test]
    fn render_three_quarters_binary() {
        let w = WritableNumber::from_rational(&rat(3, 4), Base::BINARY).unwrap();
        assert_eq!(w.to_string(), "0.11");
    }

    #[test]
    fn render_rejects_one_seventh_decimal() {
        assert!(matches!(
            WritableNumber::from_rational(&rat(1, 7), Base::DECIMAL),
            Err(NumeralError::NotWritable(..))
        ));
    }

    #[test]
    fn writability_depends_on_base() {
        let third = rat(1, 3);
        assert!(is_writable(&third, Base::new(3).unwrap()));
        assert!(!is_writable(&third, Base::DECIMAL));
        assert!(is_writable(&RationalValue::zero(), Base::BINARY));
    }

    #[test]
    fn one_third_in_base_three_roundtrips() {
        let w = WritableNumber::from_rational(&rat(1, 3), Base::new(3).unwrap()).unwrap();
        assert_eq!(w.to_string(), "0.1");
        assert_eq!(w.value(), rat(1, 3));
    }

    #[test]
    fn split_keeps_value() {
        let w = WritableNumber::parse("10.01", Base::BINARY).unwrap();
        let (int, frac) = w.split();
        assert_eq!(int.to_string(), "10.0");
        assert_eq!(frac.to_string(), "0.01");
        assert_eq!(int.value().add(&frac.value()), w.value());

        let w = WritableNumber::parse("123.5", Base::DECIMAL).unwrap();
        let (int, frac) = w.split();
        assert_eq!(int.value(), rat(123, 1));
        assert_eq!(frac.value(), rat(1, 2));
        assert_eq!(int.value().add(&frac.value()), rat(247, 2));

        let w = WritableNumber::parse("0.11", Base::BINARY).unwrap();
        let (int, frac) = w.split();
        assert_eq!(int.to_string(), "0.0");
        assert_eq!(frac.to_string(), "0.11");
    }

    #[test]
    fn canonical_strips_trailing_zeros_only() {
        let w = WritableNumber::parse("0.0100", Base::BINARY).unwrap();
        assert_eq!(w.canonical().to_string(), "0.01");
        assert!(!w.is_canonical());
        let z = WritableNumber::parse("0.000", Base::BINARY).unwrap();
        assert_eq!(z.canonical().to_string(), "0.0");
    }

    #[test]
    fn denominator_divides_base_power() {
        let w = WritableNumber::parse("0.375", Base::DECIMAL).unwrap();
        let v = w.value();
        // q = 3 fractional digits, so the reduced denominator divides 10^3.
        assert!((Base::DECIMAL.pow(3) % v.denominator()).is_zero());
    }

    #[test]
    fn digit_out_of_range_rejected() {
        assert!(WritableNumber::new(Base::BINARY, vec![0], vec![2]).is_err());
    }

    #[test]
    fn rational_ordering_and_arithmetic() {
        assert!(rat(1, 3) < rat(1, 2));
        assert_eq!(rat(1, 2).add(&rat(1, 3)), rat(5, 6));
        assert_eq!(rat(1, 2).sub(&rat(1, 3)), rat(1, 6));
        assert_eq!(rat(2, 3).mul(&rat(3, 4)), rat(1, 2));
        assert_eq!(rat(4, 6), rat(2, 3));
    }

    #[test]
    fn rational_display() {
        assert_eq!(rat(11, 100).to_string(), "11/100");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(RationalValue::zero().to_string(), "0");
    }

    #[test]
    fn fraction_digit_formula_matches_rendering() {
        let x = rat(5, 8);
        let w = WritableNumber::from_rational(&x, Base::BINARY).unwrap();
        for pos in 1..=8 {
            assert_eq!(x.fraction_digit(Base::BINARY, pos), w.fraction_digit(pos));
        }
    }

    #[test]
    fn base_36_symbols() {
        let b = Base::new(36).unwrap();
        let w = WritableNumber::new(b, vec![35], vec![10]).unwrap();
        assert_eq!(w.to_string(), "z.a");
    }
}
