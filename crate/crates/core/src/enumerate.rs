//! Bijective enumerations and rank/unrank codecs: digital inversion, the
//! diagonal traversal of all binary writable numbers, the subset selector
//! codec, and the lexicographic and applicative block orders.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};

use crate::error::EnumerationError;
use crate::numeral::{big_to_digits, digits_to_big, Base, WritableNumber};

/// Digital inversion in any base: the fractional number whose digits are the
/// digits of `n` reversed behind the radix point. `0` maps to `0.0`.
pub fn digital_inversion(n: &BigUint, base: Base) -> WritableNumber {
    let mut digits = big_to_digits(n, base);
    digits.reverse(); // least significant digit lands at position 1
    WritableNumber::fraction(base, digits).expect("digits below base")
}

/// Binary digital inversion, `DI(x1 x2 ... xk) = 0.xk ... x2 x1`.
pub fn di(n: u64) -> WritableNumber {
    digital_inversion(&BigUint::from(n), Base::BINARY)
}

/// Position of a finite fractional number in the digital-inversion list:
/// its canonical fractional digits reversed, read as an integer.
///
/// The prefix is canonicalized first, so `0.1100` ranks as `0.11`; this is
/// what makes ranking truncations of longer streams well defined.
pub fn digital_inversion_rank(prefix: &WritableNumber) -> BigUint {
    let canon = prefix.canonical();
    let mut digits = canon.fractional_digits().to_vec();
    digits.reverse();
    digits_to_big(&digits, prefix.base())
}

/// Binary inverse of [`di`], `Pos(0.x1 x2 ... xk) = xk ... x2 x1`.
pub fn di_inverse(prefix: &WritableNumber) -> BigUint {
    digital_inversion_rank(prefix)
}

/// The `n`-th binary writable number under the anti-diagonal traversal of
/// the (integer part) x (fractional part) grid: `0.0, 0.1, 1.0, 0.01, 1.1,
/// 10.0, ...`
pub fn w2_list(n: u64) -> WritableNumber {
    // Anti-diagonal d holds entries (i, d - i) for i = 0..=d, starting after
    // the d(d+1)/2 entries of earlier diagonals.
    let d = triangle_root(n);
    let i = n - d * (d + 1) / 2;
    let j = d - i;
    compose_w2(&BigUint::from(i), j)
}

/// Index of a canonical binary writable number in [`w2_list`].
pub fn w2_rank(w: &WritableNumber) -> BigUint {
    let canon = w.canonical();
    let (int_part, frac_part) = canon.split();
    let i = int_part.value().numerator().clone();
    let j = digital_inversion_rank(&frac_part);
    let d = &i + &j;
    (&d * (&d + BigUint::one())) / BigUint::from(2u32) + i
}

fn compose_w2(int_value: &BigUint, frac_rank: u64) -> WritableNumber {
    let int_digits = big_to_digits(int_value, Base::BINARY);
    let frac = di(frac_rank).canonical();
    WritableNumber::new(Base::BINARY, int_digits, frac.fractional_digits().to_vec())
        .expect("digits below base")
}

/// Largest `d` with `d(d+1)/2 <= n`.
fn triangle_root(n: u64) -> u64 {
    let d = ((8u128 * n as u128 + 1).sqrt() - 1) / 2;
    let mut d = d as u64;
    while (d + 1) * (d + 2) / 2 <= n {
        d += 1;
    }
    while d * (d + 1) / 2 > n {
        d -= 1;
    }
    d
}

/// A finite subset of the non-negative integers encoded as the integer whose
/// binary digits are the indicator bits: bit `i` set means element `i` is in
/// the subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelectorCode(pub BigUint);

impl SelectorCode {
    pub fn from_u64(code: u64) -> SelectorCode {
        SelectorCode(BigUint::from(code))
    }

    /// The set of bit positions holding 1. `decode(0)` is the empty set.
    pub fn decode(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for i in 0..self.0.bits() {
            if self.0.bit(i) {
                out.insert(i);
            }
        }
        out
    }

    /// Indicator encoding of a finite set; inverse of [`SelectorCode::decode`].
    pub fn encode(set: &BTreeSet<u64>) -> SelectorCode {
        let mut code = BigUint::zero();
        for &i in set {
            code.set_bit(i, true);
        }
        SelectorCode(code)
    }

    /// Choose the subset of a listed set: positions with bit 1, mapped
    /// through the list.
    pub fn select<'a, T>(&self, listed: &'a [T]) -> Vec<&'a T> {
        self.decode()
            .into_iter()
            .filter_map(|i| listed.get(i as usize))
            .collect()
    }
}

impl fmt::Display for SelectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A string over the abstract alphabet `1..=n`, kept as symbol values.
pub type SymbolString = Vec<u32>;

/// Render a symbol string by concatenating decimal symbol names; unambiguous
/// for alphabets of at most 9 symbols.
pub fn render_symbols(s: &[u32]) -> String {
    s.iter().map(|d| d.to_string()).collect()
}

/// All nonempty strings over `1..=symbols` of length at most `max_len`,
/// ordered by length then lexicographically.
pub fn lex_list(symbols: u64, max_len: u64) -> Vec<SymbolString> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        push_lex_block(symbols, len, &mut out);
    }
    out
}

/// All length-`len` strings over `1..=symbols` in lexicographic order.
fn push_lex_block(symbols: u64, len: u64, out: &mut Vec<SymbolString>) {
    let mut current = vec![1u32; len as usize];
    loop {
        out.push(current.clone());
        // next string in lex order: increment from the right
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if current[pos] < symbols as u32 {
                current[pos] += 1;
                for d in current.iter_mut().skip(pos + 1) {
                    *d = 1;
                }
                break;
            }
        }
    }
}

/// Exact count of nonempty strings over `n` symbols with length at most `d`:
/// `n + n^2 + ... + n^d`.
pub fn applicative_count(symbols: u64, max_len: u64) -> BigUint {
    let n = BigUint::from(symbols);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for _ in 0..max_len {
        power *= &n;
        total += &power;
    }
    total
}

/// The applicative ordering of all nonempty strings over `1..=n` of length
/// at most `n`: recursive square blocks. Block `k` starts with block `k-1`,
/// then the strings shorter than `k` that use symbol `k` (by length, then
/// lexicographic), then all length-`k` strings in lexicographic order.
pub fn applicative_list(symbols: u64, max_len: u64) -> Result<Vec<SymbolString>, EnumerationError> {
    if symbols != max_len {
        return Err(EnumerationError::InvalidShape(symbols, max_len));
    }
    let mut out = Vec::new();
    for k in 1..=symbols {
        // middle part: length < k, containing symbol k at least once
        for len in 1..k {
            let mut block = Vec::new();
            push_lex_block(k, len, &mut block);
            out.extend(
                block
                    .into_iter()
                    .filter(|s| s.contains(&(k as u32))),
            );
        }
        // final part: exactly k digits over 1..=k
        push_lex_block(k, k, &mut out);
    }
    Ok(out)
}

/// Largest supported alphabet for the rank/unrank codec; keeps every block
/// count inside u128.
const MAX_RANK_SYMBOLS: u64 = 25;

/// 1-based position of `s` in the applicative ordering over `1..=n`.
///
/// The block structure makes the position independent of `n` as long as the
/// string fits: block `k` is a literal prefix of block `k+1`.
pub fn applicative_rank(s: &[u32], symbols: u64) -> Result<u128, EnumerationError> {
    if symbols == 0 || symbols > MAX_RANK_SYMBOLS {
        return Err(EnumerationError::OutOfRange(symbols.to_string()));
    }
    if s.is_empty() {
        return Err(EnumerationError::OutOfRange("empty string".into()));
    }
    for &d in s {
        if d == 0 || d as u64 > symbols {
            return Err(EnumerationError::OutOfAlphabet(d, symbols));
        }
    }
    let len = s.len() as u64;
    if len > symbols {
        return Err(EnumerationError::OutOfRange(render_symbols(s)));
    }
    let max_symbol = *s.iter().max().expect("nonempty") as u64;
    let block = len.max(max_symbol);
    let mut rank = count_u128(block - 1, block - 1); // everything in block - 1
    if len == block {
        // final part of the block: all length-`block` strings, lex order
        rank += middle_count(block);
        rank += lex_value(s, block);
    } else {
        // middle part: shorter strings that contain the block symbol
        for l in 1..len {
            rank += pow_u128(block, l) - pow_u128(block - 1, l);
        }
        rank += lex_value(s, block) - lex_value_avoiding(s, block);
    }
    Ok(rank + 1)
}

/// Inverse of [`applicative_rank`]: the string at 1-based `position` in the
/// applicative ordering over `1..=n`.
pub fn applicative_unrank(position: u128, symbols: u64) -> Result<SymbolString, EnumerationError> {
    if symbols == 0 || symbols > MAX_RANK_SYMBOLS {
        return Err(EnumerationError::OutOfRange(symbols.to_string()));
    }
    if position == 0 || position > count_u128(symbols, symbols) {
        return Err(EnumerationError::OutOfRange(position.to_string()));
    }
    // Find the block whose new part holds the position.
    let mut block = 1u64;
    while count_u128(block, block) < position {
        block += 1;
    }
    let mut rest = position - 1 - count_u128(block - 1, block - 1); // 0-based in new part
    let mid = middle_count(block);
    if rest >= mid {
        // final part: length-`block` strings in lex order
        return Ok(lex_unvalue(rest - mid, block, block));
    }
    // middle part: find the length, then walk digits counting only strings
    // that still can (or already do) contain the block symbol
    let mut len = 1u64;
    loop {
        let c = pow_u128(block, len) - pow_u128(block - 1, len);
        if rest < c {
            break;
        }
        rest -= c;
        len += 1;
    }
    let mut out: SymbolString = Vec::with_capacity(len as usize);
    let mut seen_block_symbol = false;
    for i in 0..len {
        let remaining = len - i - 1;
        for d in 1..=block {
            let completions = if seen_block_symbol || d == block {
                pow_u128(block, remaining)
            } else {
                pow_u128(block, remaining) - pow_u128(block - 1, remaining)
            };
            if rest < completions {
                out.push(d as u32);
                seen_block_symbol = seen_block_symbol || d == block;
                break;
            }
            rest -= completions;
        }
    }
    debug_assert!(seen_block_symbol);
    Ok(out)
}

/// Count of strings in the middle part of block `k`: shorter than `k`,
/// containing the symbol `k`.
fn middle_count(block: u64) -> u128 {
    let mut total = 0u128;
    for l in 1..block {
        total += pow_u128(block, l) - pow_u128(block - 1, l);
    }
    total
}

fn count_u128(symbols: u64, max_len: u64) -> u128 {
    let mut power = 1u128;
    let mut total = 0u128;
    for _ in 0..max_len {
        power *= symbols as u128;
        total += power;
    }
    total
}

fn pow_u128(base: u64, exp: u64) -> u128 {
    (base as u128).pow(exp as u32)
}

/// Number of equal-length strings over `1..=n` lexicographically before `s`.
fn lex_value(s: &[u32], n: u64) -> u128 {
    let mut v = 0u128;
    for &d in s {
        v = v * n as u128 + (d as u128 - 1);
    }
    v
}

/// Number of equal-length strings over `1..=n-1` (avoiding symbol `n`)
/// lexicographically before `s`.
fn lex_value_avoiding(s: &[u32], n: u64) -> u128 {
    let mut count = 0u128;
    for (i, &d) in s.iter().enumerate() {
        let rest = (s.len() - i - 1) as u64;
        let smaller = (d as u64 - 1).min(n - 1);
        count += smaller as u128 * pow_u128(n - 1, rest);
        if d as u64 == n {
            break; // no string avoiding n shares this prefix
        }
    }
    count
}

/// The 0-based `value`-th length-`len` string over `1..=n` in lex order.
fn lex_unvalue(value: u128, len: u64, n: u64) -> SymbolString {
    let mut digits = vec![1u32; len as usize];
    let mut v = value;
    for i in (0..len as usize).rev() {
        digits[i] = (v % n as u128) as u32 + 1;
        v /= n as u128;
    }
    digits
}
