//! Enumerated lists of digit streams — the inputs the diagonal method
//! consumes — plus the named lists the command line exposes.
//!
//! A [`ListSpec`] packages an index-to-stream function with the metadata the
//! diagonal engine needs: the start index (some reference tables are 0-based,
//! others 1-based), the ending convention of the entries, an optional exact
//! rank function, and an optional *diagonal tail proof*.
//!
//! The tail proof is what lets the engine declare convergence without
//! guessing from a finite window: for the digital-inversion family, the entry
//! at index `n` has at most `floor(log_b n) + 1` significant digits, so from
//! some concrete row onward the diagonal provably reads the entry's tail
//! digit. [`DiagonalTail`] records that row and digit; every builder derives
//! it from its own construction, and the unit tests check it empirically.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::enumerate::{digital_inversion, digital_inversion_rank};
use crate::numeral::{Base, EndingConvention, WritableNumber};
use crate::stream::{DigitStream, Tail};

/// Proof metadata: for every row `n >= from_row`, the list entry at `n`
/// yields `entry_digit` at that row's diagonal position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalTail {
    pub from_row: u64,
    pub entry_digit: u32,
}

type EntryFn = dyn Fn(u64) -> DigitStream + Send + Sync;
type RankFn = dyn Fn(&WritableNumber) -> Option<BigUint> + Send + Sync;

/// An enumerated list: `index -> DigitStream`, with optional exact rank.
#[derive(Clone)]
pub struct ListSpec {
    base: Base,
    start_index: u64,
    ending: EndingConvention,
    description: String,
    len: Option<u64>,
    entries: Arc<EntryFn>,
    rank: Option<Arc<RankFn>>,
    diag_tail: Option<DiagonalTail>,
    /// All entries at indices >= this bound have nonzero value; needed to
    /// keep the tail proof sound across ending conversion (zero entries
    /// have no max-digit-ending form and stay all-zero).
    nonzero_from: Option<u64>,
}

impl ListSpec {
    pub fn new(
        base: Base,
        start_index: u64,
        ending: EndingConvention,
        description: impl Into<String>,
        entries: impl Fn(u64) -> DigitStream + Send + Sync + 'static,
    ) -> ListSpec {
        ListSpec {
            base,
            start_index,
            ending,
            description: description.into(),
            len: None,
            entries: Arc::new(entries),
            rank: None,
            diag_tail: None,
            nonzero_from: None,
        }
    }

    pub fn with_rank(
        mut self,
        rank: impl Fn(&WritableNumber) -> Option<BigUint> + Send + Sync + 'static,
    ) -> ListSpec {
        self.rank = Some(Arc::new(rank));
        self
    }

    pub fn with_diag_tail(mut self, tail: DiagonalTail) -> ListSpec {
        self.diag_tail = Some(tail);
        self
    }

    pub fn with_len(mut self, len: u64) -> ListSpec {
        self.len = Some(len);
        self
    }

    pub fn with_nonzero_from(mut self, index: u64) -> ListSpec {
        self.nonzero_from = Some(index);
        self
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn start_index(&self) -> u64 {
        self.start_index
    }

    pub fn ending(&self) -> EndingConvention {
        self.ending
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Number of rows for finite prefix lists, `None` for unbounded ones.
    pub fn finite_len(&self) -> Option<u64> {
        self.len
    }

    pub fn diag_tail(&self) -> Option<DiagonalTail> {
        self.diag_tail
    }

    pub fn nonzero_from(&self) -> Option<u64> {
        self.nonzero_from
    }

    pub fn has_rank(&self) -> bool {
        self.rank.is_some()
    }

    /// The entry at `index`; total over `index >= start_index` (and below
    /// `start_index + len` for finite lists).
    pub fn entry(&self, index: u64) -> DigitStream {
        debug_assert!(index >= self.start_index, "index below start");
        if let Some(len) = self.len {
            assert!(index < self.start_index + len, "index beyond finite list");
        }
        (self.entries)(index)
    }

    /// Exact rank of a canonical writable number among the entries, when the
    /// list carries a rank function.
    pub fn rank_of(&self, w: &WritableNumber) -> Option<Option<BigUint>> {
        self.rank.as_ref().map(|rank| rank(w))
    }

    /// The fractional digit position row `n` contributes to the diagonal:
    /// position `n + 1` for 0-based lists, position `n` for 1-based ones.
    pub fn diagonal_position(&self, row: u64) -> u64 {
        row + 1 - self.start_index
    }

    /// Re-read the entries under another ending convention. Entries whose
    /// value is zero keep their all-zero form (zero has no max-digit-ending
    /// representation); entries with unknown tails are left untouched.
    pub fn converted_to(&self, target: EndingConvention) -> ListSpec {
        if target == self.ending {
            return self.clone();
        }
        let inner = Arc::clone(&self.entries);
        let entries = move |index: u64| -> DigitStream {
            let s = inner(index);
            let finite = match (s.tail(), target) {
                (Tail::EventuallyZero { .. }, EndingConvention::MaxDigitEnding)
                | (Tail::EventuallyMax { .. }, EndingConvention::ZeroEnding) => s.finite_form(),
                _ => None,
            };
            match finite {
                Some(w) if !w.is_zero() => DigitStream::of_writable_with_ending(&w, target)
                    .expect("nonzero finite value converts"),
                _ => s,
            }
        };
        // The conversion decrements (or restores) the last significant digit
        // in place, so an entry's significant region never grows and the tail
        // proof's row bound stays valid. Zero entries keep digit 0, so under
        // MaxDigitEnding the proof only starts once entries are nonzero.
        let diag_tail = self.diag_tail.and_then(|t| match target {
            EndingConvention::ZeroEnding => Some(DiagonalTail {
                from_row: t.from_row,
                entry_digit: 0,
            }),
            EndingConvention::MaxDigitEnding => self.nonzero_from.map(|nz| DiagonalTail {
                from_row: t.from_row.max(nz),
                entry_digit: self.base.max_digit(),
            }),
        });
        ListSpec {
            base: self.base,
            start_index: self.start_index,
            ending: target,
            description: format!("{} ({target})", self.description),
            len: self.len,
            entries: Arc::new(entries),
            rank: self.rank.clone(),
            diag_tail,
            nonzero_from: self.nonzero_from,
        }
    }

    /// A finite list from explicit streams, starting at `start_index`.
    pub fn from_streams(
        base: Base,
        start_index: u64,
        ending: EndingConvention,
        description: impl Into<String>,
        streams: Vec<DigitStream>,
    ) -> ListSpec {
        let len = streams.len() as u64;
        let streams = Arc::new(streams);
        ListSpec {
            base,
            start_index,
            ending,
            description: description.into(),
            len: Some(len),
            entries: Arc::new(move |index: u64| {
                streams[(index - start_index) as usize].clone()
            }),
            rank: None,
            diag_tail: None,
            nonzero_from: None,
        }
    }
}

impl std::fmt::Debug for ListSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ListSpec")
            .field("description", &self.description)
            .field("base", &self.base)
            .field("start_index", &self.start_index)
            .field("ending", &self.ending)
            .field("len", &self.len)
            .finish()
    }
}

/// Smallest row from which `row >= digit_count_b(row) + gap` holds for all
/// later rows, where `digit_count_b(n)` is the length of `n` in base `b`.
/// Used to place the start of the provable tail region.
fn tail_start(base: Base, gap: u64) -> u64 {
    // digit_count_b(n) + gap <= n holds for all n >= 4 + gap in any base;
    // probe the small rows directly.
    let digit_count = |n: u64| -> u64 {
        let mut c = 1;
        let mut v = n / base.get() as u64;
        while v > 0 {
            c += 1;
            v /= base.get() as u64;
        }
        c
    };
    let ceiling = 4 + gap;
    let mut from = ceiling;
    while from > 1 && from > digit_count(from - 1) + gap {
        from -= 1;
    }
    from
}

/// The worked counterexample list: `0.1`, then `0.0`, then `0.0` followed by
/// `n - 1` ones. Every diagonal prefix reappears one line later.
pub fn l1() -> ListSpec {
    let entries = |n: u64| -> DigitStream {
        let digits = match n {
            0 => vec![1],
            1 => vec![0],
            _ => {
                let mut d = vec![0];
                d.extend(std::iter::repeat_n(1, (n - 1) as usize));
                d
            }
        };
        let w = WritableNumber::fraction(Base::BINARY, digits).expect("binary digits");
        DigitStream::of_writable(&w).expect("fractional")
    };
    let rank = |w: &WritableNumber| -> Option<BigUint> {
        if !w.is_fractional() {
            return None;
        }
        let canon = w.canonical();
        let digits = canon.fractional_digits();
        if digits == [1] {
            return Some(BigUint::from(0u32));
        }
        if digits == [0] {
            return Some(BigUint::from(1u32));
        }
        // 0 followed by m >= 1 ones sits at index m + 1
        if digits[0] == 0 && digits[1..].iter().all(|&d| d == 1) {
            return Some(BigUint::from(digits.len() as u64));
        }
        None
    };
    ListSpec::new(
        Base::BINARY,
        0,
        EndingConvention::ZeroEnding,
        "l1",
        entries,
    )
    .with_rank(rank)
    // Row 0 reads the 1 of entry 0.1; from row 1 on, the diagonal position
    // n + 1 is past entry n's n significant digits.
    .with_diag_tail(DiagonalTail {
        from_row: 1,
        entry_digit: 0,
    })
    .with_nonzero_from(2)
}

/// The digital-inversion list in any base: entry `n` is `DI(n)` under the
/// requested ending convention (the zero entry keeps its all-zero form).
pub fn ldi(base: Base, ending: EndingConvention) -> ListSpec {
    let entries = move |n: u64| -> DigitStream {
        let w = digital_inversion(&BigUint::from(n), base);
        if w.is_zero() {
            DigitStream::of_writable(&w).expect("fractional")
        } else {
            DigitStream::of_writable_with_ending(&w, ending).expect("nonzero fraction")
        }
    };
    let rank = move |w: &WritableNumber| -> Option<BigUint> {
        if !w.is_fractional() {
            return None;
        }
        Some(digital_inversion_rank(w))
    };
    let diag_tail = match ending {
        // Row n reads position n + 1, past the digit_count(n) significant
        // digits of DI(n) for every n; the zero entry reads 0 anyway.
        EndingConvention::ZeroEnding => DiagonalTail {
            from_row: 0,
            entry_digit: 0,
        },
        // Same position bound, but the proof starts after the zero entry.
        EndingConvention::MaxDigitEnding => DiagonalTail {
            from_row: tail_start(base, 0).max(1),
            entry_digit: base.max_digit(),
        },
    };
    let name = match ending {
        EndingConvention::ZeroEnding => "ldi".to_string(),
        EndingConvention::MaxDigitEnding => format!("ldi ({}-ending)", base.max_digit()),
    };
    ListSpec::new(base, 0, ending, name, entries)
        .with_rank(rank)
        .with_diag_tail(diag_tail)
        .with_nonzero_from(1)
}

/// The max-digit-ending digital-inversion list with zero removed: entry `n`
/// (from 1) is `DI(n)` written with the eventual `b - 1` tail.
pub fn ldi_one_ending(base: Base) -> ListSpec {
    let entries = move |n: u64| -> DigitStream {
        let w = digital_inversion(&BigUint::from(n), base);
        DigitStream::of_writable_with_ending(&w, EndingConvention::MaxDigitEnding)
            .expect("entries start at 1, so values are nonzero")
    };
    let rank = move |w: &WritableNumber| -> Option<BigUint> {
        if !w.is_fractional() || w.is_zero() {
            return None; // zero is not in this list
        }
        Some(digital_inversion_rank(w))
    };
    ListSpec::new(
        base,
        1,
        EndingConvention::MaxDigitEnding,
        "ldi-dprime",
        entries,
    )
    .with_rank(rank)
    // Row n reads position n (1-based list); provable once n exceeds the
    // significant digit count of DI(n).
    .with_diag_tail(DiagonalTail {
        from_row: tail_start(base, 1).max(1),
        entry_digit: base.max_digit(),
    })
    .with_nonzero_from(1)
}

/// The worked pool of reals for the skeleton reordering: `3/4`, `log(2)`,
/// `0`, `sqrt(2)-1`, `sqrt(3)-1`, `pi-3`, `e-2`, each as its binary digit
/// stream under max-digit-ending (irrational entries are their own
/// expansion; zero keeps its all-zero form).
pub fn reordering_pool() -> Vec<crate::shuffle::PoolEntry> {
    use crate::numeral::RationalValue;
    use crate::oracles::{stream_of_constant, ConstantName};
    use crate::shuffle::PoolEntry;

    let three_quarters = WritableNumber::parse("0.11", Base::BINARY).expect("binary digits");
    let zero = WritableNumber::zero(Base::BINARY);
    vec![
        PoolEntry::new(
            "3/4",
            Some(RationalValue::from_u64(3, 4).expect("nonzero denominator")),
            DigitStream::of_writable_with_ending(&three_quarters, EndingConvention::MaxDigitEnding)
                .expect("nonzero fraction"),
        ),
        PoolEntry::new(
            "log(2)",
            None,
            stream_of_constant(ConstantName::Log2, Base::BINARY),
        ),
        PoolEntry::new(
            "0",
            Some(RationalValue::zero()),
            DigitStream::of_writable(&zero).expect("fractional"),
        ),
        PoolEntry::new(
            "sqrt(2)-1",
            None,
            stream_of_constant(ConstantName::Sqrt2Minus1, Base::BINARY),
        ),
        PoolEntry::new(
            "sqrt(3)-1",
            None,
            stream_of_constant(ConstantName::Sqrt3Minus1, Base::BINARY),
        ),
        PoolEntry::new(
            "pi-3",
            None,
            stream_of_constant(ConstantName::PiMinus3, Base::BINARY),
        ),
        PoolEntry::new(
            "e-2",
            None,
            stream_of_constant(ConstantName::EMinus2, Base::BINARY),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(s: &DigitStream, count: u64) -> String {
        (1..=count).map(|p| s.digit_at(p).to_string()).collect()
    }

    #[test]
    fn ldi_reference_rows() {
        let list = ldi(Base::BINARY, EndingConvention::ZeroEnding);
        let expected = [
            "00000000", "10000000", "01000000", "11000000", "00100000", "10100000", "01100000",
            "11100000", "00010000",
        ];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(prefix(&list.entry(n as u64), 8), *want, "row {n}");
        }
    }

    #[test]
    fn ldi_one_ending_reference_rows() {
        let list = ldi_one_ending(Base::BINARY);
        let expected = [
            (1, "01111111111"),
            (2, "00111111111"),
            (3, "10111111111"),
            (4, "00011111111"),
            (5, "10011111111"),
            (6, "01011111111"),
            (7, "11011111111"),
            (8, "00001111111"),
            (9, "10001111111"),
        ];
        for (n, want) in expected {
            assert_eq!(prefix(&list.entry(n), 11), want, "row {n}");
        }
    }

    #[test]
    fn l1_reference_rows() {
        let list = l1();
        let expected = ["10000000", "00000000", "01000000", "01100000", "01110000"];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(prefix(&list.entry(n as u64), 8), *want, "row {n}");
        }
    }

    #[test]
    fn l1_rank() {
        let list = l1();
        let w = |s: &str| WritableNumber::parse(s, Base::BINARY).unwrap();
        assert_eq!(list.rank_of(&w("0.1")).unwrap(), Some(BigUint::from(0u32)));
        assert_eq!(list.rank_of(&w("0.0")).unwrap(), Some(BigUint::from(1u32)));
        assert_eq!(
            list.rank_of(&w("0.011")).unwrap(),
            Some(BigUint::from(3u32))
        );
        assert_eq!(list.rank_of(&w("0.101")).unwrap(), None);
    }

    #[test]
    fn rank_inverts_entries() {
        let list = ldi(Base::BINARY, EndingConvention::ZeroEnding);
        for n in 0..2000u64 {
            let canon = list.entry(n).finite_form().expect("finite entries");
            assert_eq!(list.rank_of(&canon).unwrap(), Some(BigUint::from(n)));
        }
        let one_ending = ldi_one_ending(Base::DECIMAL);
        for n in 1..2000u64 {
            let canon = one_ending.entry(n).finite_form().expect("finite entries");
            assert_eq!(one_ending.rank_of(&canon).unwrap(), Some(BigUint::from(n)));
        }
    }

    /// The tail proofs must hold empirically: from the recorded row on, the
    /// diagonal reads exactly the recorded digit.
    #[test]
    fn diag_tail_proofs_hold() {
        let lists = [
            l1(),
            ldi(Base::BINARY, EndingConvention::ZeroEnding),
            ldi(Base::BINARY, EndingConvention::MaxDigitEnding),
            ldi(Base::DECIMAL, EndingConvention::ZeroEnding),
            ldi(Base::DECIMAL, EndingConvention::MaxDigitEnding),
            ldi_one_ending(Base::BINARY),
            ldi_one_ending(Base::DECIMAL),
        ];
        for list in lists {
            let tail = list.diag_tail().expect("structured lists carry proofs");
            for row in tail.from_row..tail.from_row + 800 {
                let pos = list.diagonal_position(row);
                assert_eq!(
                    list.entry(row).digit_at(pos),
                    tail.entry_digit,
                    "{} row {row}",
                    list.description()
                );
            }
        }
    }

    #[test]
    fn conversion_changes_digits_not_values() {
        let zero_ending = ldi(Base::DECIMAL, EndingConvention::ZeroEnding);
        let nine_ending = zero_ending.converted_to(EndingConvention::MaxDigitEnding);
        assert_eq!(prefix(&nine_ending.entry(1), 5), "09999");
        assert_eq!(prefix(&nine_ending.entry(0), 5), "00000"); // zero stays
        for n in 0..200 {
            assert_eq!(
                zero_ending.entry(n).limit_value(),
                nine_ending.entry(n).limit_value(),
                "row {n}"
            );
        }
        // The converted list's tail proof holds too.
        let tail = nine_ending.diag_tail().expect("proof survives conversion");
        for row in tail.from_row..tail.from_row + 500 {
            let pos = nine_ending.diagonal_position(row);
            assert_eq!(nine_ending.entry(row).digit_at(pos), tail.entry_digit);
        }
    }

    #[test]
    fn finite_list_bounds() {
        let streams = vec![
            DigitStream::of_writable(&WritableNumber::parse("0.1", Base::BINARY).unwrap()).unwrap(),
        ];
        let list = ListSpec::from_streams(
            Base::BINARY,
            1,
            EndingConvention::ZeroEnding,
            "tiny",
            streams,
        );
        assert_eq!(list.finite_len(), Some(1));
        assert_eq!(list.entry(1).digit_at(1), 1);
    }
}
