//! Index permutations over enumerated lists, and the skeleton-matching
//! reordering that forces a pool of reals to present a chosen diagonal.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::DiagonalError;
use crate::lists::{DiagonalTail, ListSpec};
use crate::numeral::RationalValue;
use crate::stream::DigitStream;

type IndexFn = dyn Fn(u64) -> u64 + Send + Sync;

/// A bijection on list indices with an explicit inverse. A finite
/// `support_bound` records that indices above it map to themselves, which is
/// what lets tail proofs survive shuffling.
#[derive(Clone)]
pub struct Shuffle {
    label: String,
    forward: Arc<IndexFn>,
    backward: Arc<IndexFn>,
    support_bound: Option<u64>,
}

impl Shuffle {
    pub fn identity() -> Shuffle {
        Shuffle {
            label: "identity".into(),
            forward: Arc::new(|n| n),
            backward: Arc::new(|n| n),
            support_bound: Some(0),
        }
    }

    /// The swap of indices 0 and 1: `s0(n) = 1 - n` for `n <= 1`, identity
    /// above. Self-inverse.
    pub fn s0() -> Shuffle {
        let map = |n: u64| if n <= 1 { 1 - n } else { n };
        Shuffle {
            label: "s0".into(),
            forward: Arc::new(map),
            backward: Arc::new(map),
            support_bound: Some(1),
        }
    }

    /// Swap two arbitrary indices; identity elsewhere. Self-inverse.
    pub fn swap(i: u64, j: u64) -> Shuffle {
        let map = move |n: u64| {
            if n == i {
                j
            } else if n == j {
                i
            } else {
                n
            }
        };
        Shuffle {
            label: format!("swap:{i},{j}"),
            forward: Arc::new(map),
            backward: Arc::new(map),
            support_bound: Some(i.max(j)),
        }
    }

    /// Apply `first` to the list, then `second`: the combined map reads
    /// entries at `first(second(n))`.
    pub fn then(&self, second: &Shuffle) -> Shuffle {
        let f1 = Arc::clone(&self.forward);
        let f2 = Arc::clone(&second.forward);
        let b1 = Arc::clone(&self.backward);
        let b2 = Arc::clone(&second.backward);
        Shuffle {
            label: format!("{}+{}", self.label, second.label),
            forward: Arc::new(move |n| f1(f2(n))),
            backward: Arc::new(move |n| b2(b1(n))),
            support_bound: match (self.support_bound, second.support_bound) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            },
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn map(&self, n: u64) -> u64 {
        (self.forward)(n)
    }

    pub fn inverse(&self, n: u64) -> u64 {
        (self.backward)(n)
    }

    pub fn support_bound(&self) -> Option<u64> {
        self.support_bound
    }

    /// Reorder a list: entry `n` of the result is entry `map(n)` of the
    /// input. Rank functions are composed with the inverse; the diagonal
    /// tail proof survives when the shuffle has finite support.
    pub fn apply(&self, list: &ListSpec) -> ListSpec {
        let inner = list.clone();
        let forward = Arc::clone(&self.forward);
        let description = format!("{} * {}", self.label, list.description());
        let mut out = ListSpec::new(
            list.base(),
            list.start_index(),
            list.ending(),
            description,
            move |n| inner.entry(forward(n)),
        );
        if list.has_rank() {
            let inner = list.clone();
            let backward = Arc::clone(&self.backward);
            out = out.with_rank(move |w| {
                inner.rank_of(w).expect("rank present").map(|r| {
                    // Indices beyond u64 cannot have been moved by a shuffle
                    // with (necessarily u64) support, so map only small ranks.
                    match u64::try_from(&r) {
                        Ok(small) => BigUint::from(backward(small)),
                        Err(_) => r,
                    }
                })
            });
        }
        if let (Some(tail), Some(bound)) = (list.diag_tail(), self.support_bound) {
            out = out.with_diag_tail(DiagonalTail {
                from_row: tail.from_row.max(bound + 1),
                entry_digit: tail.entry_digit,
            });
        }
        if let Some(nz) = list.nonzero_from() {
            if let Some(bound) = self.support_bound {
                out = out.with_nonzero_from(nz.max(bound + 1));
            }
        }
        if let Some(len) = list.finite_len() {
            out = out.with_len(len);
        }
        out
    }
}

impl std::fmt::Debug for Shuffle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Shuffle({})", self.label)
    }
}

/// A labeled pool row for the skeleton reordering: the number's display
/// label, its exact value when it has one, and its digit stream under the
/// skeleton's ending convention.
#[derive(Clone)]
pub struct PoolEntry {
    pub label: String,
    pub value: Option<RationalValue>,
    pub stream: DigitStream,
}

impl PoolEntry {
    pub fn new(label: impl Into<String>, value: Option<RationalValue>, stream: DigitStream) -> PoolEntry {
        PoolEntry {
            label: label.into(),
            value,
            stream,
        }
    }
}

/// Reorder `pool` so that for every line `i` in `1..=depth` the digit at
/// position `i` of line `i` matches the skeleton's, with `pinned` values
/// placed at their lines first (and skipped by the matching pass).
///
/// This mirrors the four-step construction: copy the list, move each pinned
/// value to its line (shifting the rest), then walk the lines swapping in
/// the first later entry whose digit matches wherever the current one does
/// not. The infinite list always has a match ahead; a finite pool may not,
/// which surfaces as `PoolExhausted`.
pub fn skeleton_reorder(
    pool: &[PoolEntry],
    skeleton: &ListSpec,
    pinned: &[(RationalValue, u64)],
    depth: u64,
) -> Result<Vec<PoolEntry>, DiagonalError> {
    assert_eq!(
        skeleton.start_index(),
        1,
        "the reordering walks 1-based skeleton lines"
    );
    let mut rows: Vec<PoolEntry> = pool.to_vec();
    let mut pinned_lines: Vec<u64> = Vec::new();

    for (value, line) in pinned {
        if *line < 1 || *line > depth {
            return Err(DiagonalError::PinOutOfRange(*line));
        }
        let from = rows
            .iter()
            .position(|e| e.value.as_ref() == Some(value))
            .ok_or_else(|| DiagonalError::PinNotInPool(value.to_string()))?;
        let entry = rows.remove(from);
        rows.insert((*line - 1) as usize, entry);
        pinned_lines.push(*line);
    }

    for line in 1..=depth.min(rows.len() as u64) {
        if pinned_lines.contains(&line) {
            continue;
        }
        let wanted = skeleton.entry(line).digit_at(line);
        let at = (line - 1) as usize;
        if rows[at].stream.digit_at(line) == wanted {
            continue;
        }
        let found = (at + 1..rows.len())
            .filter(|&m| !pinned_lines.contains(&(m as u64 + 1)))
            .find(|&m| rows[m].stream.digit_at(line) == wanted);
        match found {
            Some(m) => rows.swap(at, m),
            None => {
                return Err(DiagonalError::PoolExhausted {
                    position: line,
                    digit: wanted,
                })
            }
        }
    }
    rows.truncate(depth as usize);
    Ok(rows)
}

/// Package reordered pool rows as a list. The diagonal tail proof is
/// inherited from the skeleton when every row in the proof region — pinned
/// rows included — actually shows the skeleton's digit, which the reordering
/// guarantees for non-pinned rows by construction. Rows with exact values
/// make the list rankable, so a writable limit can be located among them.
pub fn reordered_list(rows: Vec<PoolEntry>, skeleton: &ListSpec, description: &str) -> ListSpec {
    let depth = rows.len() as u64;
    let inherited = skeleton.diag_tail().filter(|tail| {
        tail.from_row <= depth
            && (tail.from_row..=depth)
                .all(|row| rows[(row - 1) as usize].stream.digit_at(row) == tail.entry_digit)
    });
    let values: Vec<Option<RationalValue>> = rows.iter().map(|e| e.value.clone()).collect();
    let streams: Vec<DigitStream> = rows.into_iter().map(|e| e.stream).collect();
    let mut list = ListSpec::from_streams(
        skeleton.base(),
        1,
        skeleton.ending(),
        description,
        streams,
    )
    .with_rank(move |w| {
        let value = w.value();
        values
            .iter()
            .position(|v| v.as_ref() == Some(&value))
            .map(|line| BigUint::from(line as u64 + 1))
    });
    if let Some(tail) = inherited {
        list = list.with_diag_tail(tail);
    }
    list
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::ldi;
    use crate::numeral::{Base, EndingConvention};

    #[test]
    fn s0_reference() {
        let s = Shuffle::s0();
        assert_eq!(s.map(0), 1);
        assert_eq!(s.map(1), 0);
        assert_eq!(s.map(5), 5);
        for n in 0..100 {
            assert_eq!(s.inverse(s.map(n)), n);
        }
    }

    #[test]
    fn shuffles_are_bijections_on_the_tested_range() {
        for s in [
            Shuffle::s0(),
            Shuffle::swap(7, 4096),
            Shuffle::s0().then(&Shuffle::swap(1, 9)),
        ] {
            for n in 0..(1u64 << 16) {
                assert_eq!(s.inverse(s.map(n)), n);
                assert_eq!(s.map(s.inverse(n)), n);
            }
        }
    }

    #[test]
    fn shuffled_ldi_first_rows() {
        let list = Shuffle::s0().apply(&ldi(Base::BINARY, EndingConvention::ZeroEnding));
        let digits: String = (1..=5).map(|p| list.entry(0).digit_at(p).to_string()).collect();
        assert_eq!(digits, "10000");
        let digits: String = (1..=5).map(|p| list.entry(1).digit_at(p).to_string()).collect();
        assert_eq!(digits, "00000");
    }

    #[test]
    fn double_shuffle_is_identity() {
        let base = ldi(Base::BINARY, EndingConvention::ZeroEnding);
        let twice = Shuffle::s0().apply(&Shuffle::s0().apply(&base));
        for n in 0..256 {
            assert_eq!(
                twice.entry(n).limit_value(),
                base.entry(n).limit_value(),
                "row {n}"
            );
        }
    }

    #[test]
    fn composition_maps_in_application_order() {
        // Entry n of (s0 then swap(1,3)) reads the original at s0(swap(n)).
        let c = Shuffle::s0().then(&Shuffle::swap(1, 3));
        assert_eq!(c.map(3), 0);
        assert_eq!(c.map(1), 3);
        assert_eq!(c.map(0), 1);
        for n in 0..64 {
            assert_eq!(c.inverse(c.map(n)), n);
            assert_eq!(c.map(c.inverse(n)), n);
        }
        assert_eq!(c.support_bound(), Some(3));
    }

    /// Rank on the shuffled list is the inverse shuffle of the plain rank.
    #[test]
    fn shuffle_rank_coherence() {
        let plain = ldi(Base::BINARY, EndingConvention::ZeroEnding);
        let shuffled = Shuffle::s0().apply(&plain);
        for n in 0..(1u64 << 12) {
            let canon = shuffled.entry(n).finite_form().unwrap();
            assert_eq!(
                shuffled.rank_of(&canon).unwrap(),
                Some(BigUint::from(n)),
                "row {n}"
            );
            let plain_rank = plain.rank_of(&canon).unwrap().unwrap();
            let mapped = Shuffle::s0().inverse(u64::try_from(&plain_rank).unwrap());
            assert_eq!(mapped, n);
        }
    }

    #[test]
    fn shuffled_tail_proof_still_holds() {
        let list = Shuffle::s0().apply(&ldi(Base::DECIMAL, EndingConvention::MaxDigitEnding));
        let tail = list.diag_tail().unwrap();
        assert!(tail.from_row >= 2);
        for row in tail.from_row..tail.from_row + 300 {
            assert_eq!(list.entry(row).digit_at(list.diagonal_position(row)), tail.entry_digit);
        }
    }
}
