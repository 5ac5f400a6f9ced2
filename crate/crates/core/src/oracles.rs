//! Guaranteed-correct digit streams for a small inventory of irrational
//! constants, via exact rational interval refinement.
//!
//! Each constant has two independent computation routes (for example a
//! Machin-style arctangent combination and a central-binomial series for pi).
//! Every route produces a rational enclosure `[lo, hi]` of the constant with
//! a proven width bound; a digit is emitted only once `floor(lo * b^k)` and
//! `floor(hi * b^k)` agree, so an emitted digit can never be wrong. The two
//! routes exist so the verification suite can cross-check one against the
//! other.
//!
//! Refinement starts at 32 bits of working precision and doubles per round,
//! capped at 20 rounds. The cap turns a non-terminating refinement (which
//! cannot occur for these irrational constants) into a diagnosable panic
//! instead of a hang.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::numeral::{big_to_digits, Base, RationalValue};
use crate::stream::{DigitStream, PositionOracle};

type Rat = Ratio<BigInt>;

/// The fixed inventory of supported constants, all in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantName {
    Sqrt2Minus1,
    Sqrt3Minus1,
    Log2,
    PiMinus3,
    EMinus2,
}

impl ConstantName {
    pub fn all() -> [ConstantName; 5] {
        [
            ConstantName::Sqrt2Minus1,
            ConstantName::Sqrt3Minus1,
            ConstantName::Log2,
            ConstantName::PiMinus3,
            ConstantName::EMinus2,
        ]
    }

    /// Human-readable label, as printed in tables.
    pub fn label(self) -> &'static str {
        match self {
            ConstantName::Sqrt2Minus1 => "sqrt(2)-1",
            ConstantName::Sqrt3Minus1 => "sqrt(3)-1",
            ConstantName::Log2 => "log(2)",
            ConstantName::PiMinus3 => "pi-3",
            ConstantName::EMinus2 => "e-2",
        }
    }

    /// Command-line token.
    pub fn token(self) -> &'static str {
        match self {
            ConstantName::Sqrt2Minus1 => "sqrt2-1",
            ConstantName::Sqrt3Minus1 => "sqrt3-1",
            ConstantName::Log2 => "log2",
            ConstantName::PiMinus3 => "pi-3",
            ConstantName::EMinus2 => "e-2",
        }
    }

    pub fn parse_token(token: &str) -> Option<ConstantName> {
        ConstantName::all().into_iter().find(|c| c.token() == token)
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Which of the two independent computation routes to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRoute {
    /// Integer square roots, the `1/(k 2^k)` series for log 2, a Machin
    /// arctangent combination for pi, the factorial series for e.
    Primary,
    /// Continued-fraction convergents for the square roots and e, the
    /// `artanh(1/3)` series for log 2, a central-binomial series for pi.
    Alternate,
}

/// Digit stream for a constant using the primary computation route.
pub fn stream_of_constant(name: ConstantName, base: Base) -> DigitStream {
    DigitStream::from_oracle(Arc::new(RefinedConstant::new(
        name,
        OracleRoute::Primary,
        base,
    )))
}

/// Digit stream for the same constant computed by the independent alternate
/// route. Disagreement with [`stream_of_constant`] on any digit signals a
/// bug in one of the engines.
pub fn stream_of_constant_alt(name: ConstantName, base: Base) -> DigitStream {
    DigitStream::from_oracle(Arc::new(RefinedConstant::new(
        name,
        OracleRoute::Alternate,
        base,
    )))
}

/// A certified enclosure `[lo, hi]` of the constant with `hi - lo <= 2^-bits`
/// and `0 <= lo <= hi <= 1`, as exact rationals.
pub fn certified_enclosure(name: ConstantName, bits: u64) -> (RationalValue, RationalValue) {
    certified_enclosure_route(name, OracleRoute::Primary, bits)
}

/// The same certified enclosure computed by a chosen route.
pub fn certified_enclosure_route(
    name: ConstantName,
    route: OracleRoute,
    bits: u64,
) -> (RationalValue, RationalValue) {
    let (lo, hi) = enclosure(name, route, bits);
    (to_rational_value(&lo), to_rational_value(&hi))
}

fn to_rational_value(r: &Rat) -> RationalValue {
    assert!(!r.is_negative());
    RationalValue::new(
        r.numer().to_biguint().expect("non-negative"),
        r.denom().to_biguint().expect("positive"),
    )
    .expect("nonzero denominator")
}

const INITIAL_BITS: u64 = 32;
const MAX_ROUNDS: u32 = 20;

struct RefinedConstant {
    name: ConstantName,
    route: OracleRoute,
    base: Base,
    state: Mutex<RefineState>,
}

struct RefineState {
    digits: Vec<u32>,
    round: u32,
    lo: Rat,
    hi: Rat,
}

impl RefinedConstant {
    fn new(name: ConstantName, route: OracleRoute, base: Base) -> RefinedConstant {
        RefinedConstant {
            name,
            route,
            base,
            state: Mutex::new(RefineState {
                digits: Vec::new(),
                round: 0,
                lo: Rat::zero(),
                hi: Rat::one(),
            }),
        }
    }

    /// Narrow the enclosure and harvest every digit position on which both
    /// endpoints now agree, until `target` positions are known.
    fn extend_to(&self, state: &mut RefineState, target: u64) {
        while (state.digits.len() as u64) < target {
            if state.round >= MAX_ROUNDS {
                // Unreachable for the supported irrational constants; getting
                // here means an enclosure engine is broken.
                panic!(
                    "refinement budget exceeded computing digit {} of {} ({} rounds)",
                    state.digits.len() + 1,
                    self.name,
                    MAX_ROUNDS
                );
            }
            state.round += 1;
            let bits = INITIAL_BITS << state.round;
            let (lo, hi) = enclosure(self.name, self.route, bits);
            // Both intervals contain the constant, so their intersection does
            // too, and it is at least as narrow.
            if lo > state.lo {
                state.lo = lo;
            }
            if hi < state.hi {
                state.hi = hi;
            }
            assert!(state.lo <= state.hi, "enclosure intersection is empty");
            self.harvest(state, target + 16);
        }
    }

    /// Keep the common digit prefix of the two endpoint expansions, out to
    /// `limit` positions.
    fn harvest(&self, state: &mut RefineState, limit: u64) {
        let scale = BigInt::from(self.base.pow(limit));
        let floor_lo = (state.lo.numer() * &scale).div_floor(state.lo.denom());
        let floor_hi = (state.hi.numer() * &scale).div_floor(state.hi.denom());
        let d_lo = padded_digits(&floor_lo, self.base, limit);
        let d_hi = padded_digits(&floor_hi, self.base, limit);
        let mut common = Vec::new();
        for (a, b) in d_lo.iter().zip(d_hi.iter()) {
            if a == b {
                common.push(*a);
            } else {
                break;
            }
        }
        if common.len() > state.digits.len() {
            debug_assert!(common.starts_with(&state.digits));
            state.digits = common;
        }
    }
}

fn padded_digits(floor: &BigInt, base: Base, count: u64) -> Vec<u32> {
    let n = floor.to_biguint().unwrap_or_default();
    let mut d = big_to_digits(&n, base);
    if d == [0] {
        d.clear();
    }
    while (d.len() as u64) < count {
        d.insert(0, 0);
    }
    d
}

impl PositionOracle for RefinedConstant {
    fn base(&self) -> Base {
        self.base
    }

    fn digit_at(&self, pos: u64) -> u32 {
        let mut state = self.state.lock().expect("oracle lock");
        if (state.digits.len() as u64) < pos {
            self.extend_to(&mut state, pos);
        }
        state.digits[pos as usize - 1]
    }

    fn describe(&self) -> String {
        format!("{} ({:?} route)", self.name, self.route)
    }
}

/// Rational enclosure of the named constant with width at most `2^-bits`.
fn enclosure(name: ConstantName, route: OracleRoute, bits: u64) -> (Rat, Rat) {
    let (lo, hi) = match (name, route) {
        (ConstantName::Sqrt2Minus1, OracleRoute::Primary) => sqrt_isqrt(2, bits),
        (ConstantName::Sqrt2Minus1, OracleRoute::Alternate) => sqrt_cf(2, bits),
        (ConstantName::Sqrt3Minus1, OracleRoute::Primary) => sqrt_isqrt(3, bits),
        (ConstantName::Sqrt3Minus1, OracleRoute::Alternate) => sqrt_cf(3, bits),
        (ConstantName::Log2, OracleRoute::Primary) => log2_inverse_powers(bits),
        (ConstantName::Log2, OracleRoute::Alternate) => log2_artanh(bits),
        (ConstantName::PiMinus3, OracleRoute::Primary) => pi_machin(bits),
        (ConstantName::PiMinus3, OracleRoute::Alternate) => pi_central_binomial(bits),
        (ConstantName::EMinus2, OracleRoute::Primary) => e_factorial(bits),
        (ConstantName::EMinus2, OracleRoute::Alternate) => e_continued_fraction(bits),
    };
    debug_assert!(lo <= hi);
    // Clamp into [0, 1]; the constants all live strictly inside.
    let lo = if lo.is_negative() { Rat::zero() } else { lo };
    let hi = if hi > Rat::one() { Rat::one() } else { hi };
    (lo, hi)
}

fn shift(bits: u64) -> usize {
    usize::try_from(bits).expect("precision fits usize")
}

fn fixed(num: BigInt, bits: u64) -> Rat {
    Rat::new(num, BigInt::one() << shift(bits))
}

/// `sqrt(n) - 1` by integer square root: with `s = isqrt(n * 4^p)`,
/// `s / 2^p <= sqrt(n) < (s + 1) / 2^p`.
fn sqrt_isqrt(n: u32, bits: u64) -> (Rat, Rat) {
    let p = bits + 2;
    let scaled = BigUint::from(n) << shift(2 * p);
    let s = BigInt::from(scaled.sqrt());
    let unit = BigInt::one() << shift(p);
    (fixed(&s - &unit, p), fixed(&s + 1 - &unit, p))
}

/// `sqrt(n) - 1` by continued-fraction convergents; consecutive convergents
/// bracket the value with width `1 / (q_k q_{k+1})`.
fn sqrt_cf(n: u32, bits: u64) -> (Rat, Rat) {
    // sqrt(2) = [1; 2, 2, 2, ...], sqrt(3) = [1; 1, 2, 1, 2, ...]
    let term = move |i: u64| -> u64 {
        match n {
            2 => {
                if i == 0 {
                    1
                } else {
                    2
                }
            }
            _ => {
                if i == 0 || i % 2 == 1 {
                    1
                } else {
                    2
                }
            }
        }
    };
    convergent_enclosure(term, bits, 1)
}

/// `e - 2` by the continued fraction `[2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`.
fn e_continued_fraction(bits: u64) -> (Rat, Rat) {
    let term = |i: u64| -> u64 {
        if i == 0 {
            2
        } else if i % 3 == 2 {
            2 * (i + 1) / 3
        } else {
            1
        }
    };
    convergent_enclosure(term, bits, 2)
}

/// Enclosure from two consecutive continued-fraction convergents, shifted
/// down by `offset` to land in `[0, 1)`.
fn convergent_enclosure(term: impl Fn(u64) -> u64, bits: u64, offset: u32) -> (Rat, Rat) {
    let target: BigUint = BigUint::one() << shift(bits);
    let mut h_prev = BigUint::one();
    let mut k_prev = BigUint::zero();
    let mut h = BigUint::from(term(0));
    let mut k = BigUint::one();
    let mut i = 1u64;
    while &k_prev * &k <= target {
        let a = BigUint::from(term(i));
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        i += 1;
    }
    let c1 = Rat::new(BigInt::from(h_prev), BigInt::from(k_prev)) - BigInt::from(offset);
    let c2 = Rat::new(BigInt::from(h), BigInt::from(k)) - BigInt::from(offset);
    if c1 <= c2 {
        (c1, c2)
    } else {
        (c2, c1)
    }
}

/// log 2 as the sum of `1/(k 2^k)`, in fixed point. Each attempted term
/// contributes less than one ulp of flooring error and the tail past `p`
/// terms is below one ulp, all covered by the slack.
fn log2_inverse_powers(bits: u64) -> (Rat, Rat) {
    let p = bits + 64;
    let mut acc = BigUint::zero();
    let mut attempted = 0u64;
    for k in 1..=p {
        let term = (BigUint::one() << shift(p - k)) / BigUint::from(k);
        attempted += 1;
        if term.is_zero() {
            break;
        }
        acc += term;
    }
    let slack = BigInt::from(attempted + 2);
    (
        fixed(BigInt::from(acc.clone()), p),
        fixed(BigInt::from(acc) + slack, p),
    )
}

/// log 2 as `2 artanh(1/3)`: the positive series `2 / ((2j+1) 3^(2j+1))`.
/// Once a term floors to zero the remaining tail is below `9/8` of an ulp.
fn log2_artanh(bits: u64) -> (Rat, Rat) {
    let p = bits + 64;
    let two_scaled: BigUint = BigUint::one() << shift(p + 1);
    let mut pow3 = BigUint::from(3u32);
    let mut acc = BigUint::zero();
    let mut terms = 0u64;
    loop {
        let den = &pow3 * BigUint::from(2 * terms + 1);
        let term = &two_scaled / den;
        if term.is_zero() {
            break;
        }
        acc += term;
        pow3 *= BigUint::from(9u32);
        terms += 1;
    }
    let slack = BigInt::from(terms + 3);
    (
        fixed(BigInt::from(acc.clone()), p),
        fixed(BigInt::from(acc) + slack, p),
    )
}

/// Scaled alternating arctangent series: returns `(A, err)` with
/// `|atan(1/q) * 2^p - A| <= err` in ulps.
fn atan_inv_fixed(q: u64, p: u64) -> (BigInt, u64) {
    let one_scaled: BigUint = BigUint::one() << shift(p);
    let qq = BigUint::from(q) * BigUint::from(q);
    let mut pow = BigUint::from(q);
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    loop {
        let den = &pow * BigUint::from(2 * j + 1);
        let term = &one_scaled / den;
        if term.is_zero() {
            break;
        }
        if j.is_multiple_of(2) {
            acc += BigInt::from(term);
        } else {
            acc -= BigInt::from(term);
        }
        pow *= &qq;
        j += 1;
    }
    // j flooring ulps plus the alternating-series remainder, which is below
    // one ulp once a term floors to zero.
    (acc, j + 2)
}

/// `pi - 3` by Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_machin(bits: u64) -> (Rat, Rat) {
    let p = bits + 64;
    let (a5, e5) = atan_inv_fixed(5, p);
    let (a239, e239) = atan_inv_fixed(239, p);
    let center = 16 * a5 - 4 * a239 - (BigInt::one() << shift(p)) * 3;
    let err = BigInt::from(16 * e5 + 4 * e239 + 1);
    (fixed(&center - &err, p), fixed(center + err, p))
}

/// `pi - 3` by the central-binomial series `pi = 3 sum C(2k,k)/(16^k (2k+1))`,
/// whose term ratio stays below 1/4.
fn pi_central_binomial(bits: u64) -> (Rat, Rat) {
    let p = bits + 64;
    let mut c = BigUint::one(); // C(2k, k)
    let mut acc = BigUint::zero();
    let mut k = 0u64;
    loop {
        // term * 2^p = C(2k,k) * 2^(p - 4k) / (2k + 1), shift sign permitting
        let term = if 4 * k <= p {
            (&c << shift(p - 4 * k)) / BigUint::from(2 * k + 1)
        } else {
            &c / (BigUint::from(2 * k + 1) << shift(4 * k - p))
        };
        if term.is_zero() {
            break;
        }
        acc += term;
        c = c * BigUint::from((2 * k + 1) * (2 * k + 2)) / BigUint::from((k + 1) * (k + 1));
        k += 1;
    }
    // k flooring ulps plus a sub-ulp geometric tail, all scaled by 3.
    let acc = BigInt::from(acc);
    let slack = BigInt::from(3 * (k + 2));
    let three_scaled = (BigInt::one() << shift(p)) * 3;
    (
        fixed(3 * &acc - &three_scaled, p),
        fixed(3 * acc + slack - three_scaled, p),
    )
}

/// `e - 2` by the factorial series, using the exact floor chain
/// `floor(floor(x/a)/b) = floor(x/(a b))` so no term needs its own division
/// by a large factorial.
fn e_factorial(bits: u64) -> (Rat, Rat) {
    let p = bits + 64;
    let mut cur: BigUint = BigUint::one() << shift(p);
    let mut acc = BigUint::zero();
    let mut k = 2u64;
    let mut terms = 0u64;
    loop {
        cur /= BigUint::from(k);
        if cur.is_zero() {
            break;
        }
        acc += &cur;
        k += 1;
        terms += 1;
    }
    let slack = BigInt::from(terms + 3);
    (
        fixed(BigInt::from(acc.clone()), p),
        fixed(BigInt::from(acc) + slack, p),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_digits(s: &DigitStream, count: u64) -> String {
        (1..=count).map(|p| s.digit_at(p).to_string()).collect()
    }

    #[test]
    fn binary_expansions_match_reference() {
        let expected = [
            (ConstantName::Sqrt2Minus1, "01101010000"),
            (ConstantName::Sqrt3Minus1, "10111011011"),
            (ConstantName::Log2, "10110001011"),
            (ConstantName::PiMinus3, "00100100001"),
            (ConstantName::EMinus2, "10110111111"),
        ];
        for (name, digits) in expected {
            let s = stream_of_constant(name, Base::BINARY);
            assert_eq!(first_digits(&s, 11), digits, "{name}");
        }
    }

    #[test]
    fn routes_agree_to_64_digits() {
        for name in ConstantName::all() {
            for base in [2u32, 10] {
                let base = Base::new(base).unwrap();
                let a = stream_of_constant(name, base);
                let b = stream_of_constant_alt(name, base);
                for pos in 1..=64 {
                    assert_eq!(
                        a.digit_at(pos),
                        b.digit_at(pos),
                        "{name} base {base} position {pos}"
                    );
                }
            }
        }
    }

    #[test]
    fn query_order_does_not_matter() {
        let s = stream_of_constant(ConstantName::Log2, Base::BINARY);
        let late = s.digit_at(40);
        let early = s.digit_at(3);
        let s2 = stream_of_constant(ConstantName::Log2, Base::BINARY);
        for pos in 1..=40 {
            let _ = s2.digit_at(pos);
        }
        assert_eq!(s2.digit_at(40), late);
        assert_eq!(s2.digit_at(3), early);
    }

    #[test]
    fn truncations_sit_inside_refined_enclosures() {
        // Truncation t to k digits must satisfy t <= x < t + b^-k; a
        // sufficiently refined enclosure lands inside that digit interval.
        for name in ConstantName::all() {
            let s = stream_of_constant(name, Base::BINARY);
            for k in [10u64, 32, 64] {
                let t = s.truncate(k - 1).value(); // k digits
                let step = RationalValue::new(1u32.into(), Base::BINARY.pow(k)).unwrap();
                let contained = [8u64, 16, 64, 128, 256].iter().any(|&extra| {
                    let (lo, hi) = certified_enclosure(name, k + extra);
                    t <= lo && hi < t.add(&step)
                });
                assert!(contained, "{name}: no refined enclosure inside digit {k} interval");
            }
        }
    }

    #[test]
    fn decimal_digits_look_right() {
        // log 2 = 0.693147..., e - 2 = 0.718281..., pi - 3 = 0.141592...
        assert_eq!(
            first_digits(&stream_of_constant(ConstantName::Log2, Base::DECIMAL), 6),
            "693147"
        );
        assert_eq!(
            first_digits(&stream_of_constant(ConstantName::EMinus2, Base::DECIMAL), 6),
            "718281"
        );
        assert_eq!(
            first_digits(&stream_of_constant(ConstantName::PiMinus3, Base::DECIMAL), 6),
            "141592"
        );
        assert_eq!(
            first_digits(&stream_of_constant(ConstantName::Sqrt2Minus1, Base::DECIMAL), 6),
            "414213"
        );
        assert_eq!(
            first_digits(&stream_of_constant(ConstantName::Sqrt3Minus1, Base::DECIMAL), 6),
            "732050"
        );
    }
}
