//! End-to-end reordering check: pin 3/4 at line 3, match the pool's diagonal
//! to the one-ending inversion list, and confirm the diagonal method then
//! lands exactly on the pinned value.

use num_bigint::BigUint;

use diaglab_core::diagonal::{DMConfig, Membership, ReplacementRule, TailVerdict};
use diaglab_core::lists::{ldi_one_ending, reordering_pool};
use diaglab_core::numeral::{Base, EndingConvention, RationalValue};
use diaglab_core::shuffle::{reordered_list, skeleton_reorder};

fn digit_prefix(stream: &diaglab_core::DigitStream, count: u64) -> String {
    (1..=count).map(|p| stream.digit_at(p).to_string()).collect()
}

#[test]
fn reordering_reproduces_reference_rows() {
    let pool = reordering_pool();
    let skeleton = ldi_one_ending(Base::BINARY);
    let pinned = [(RationalValue::from_u64(3, 4).unwrap(), 3u64)];
    let rows = skeleton_reorder(&pool, &skeleton, &pinned, 7).unwrap();

    let labels: Vec<&str> = rows.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(
        labels,
        ["0", "log(2)", "3/4", "sqrt(3)-1", "sqrt(2)-1", "pi-3", "e-2"]
    );

    let expected_digits = [
        "00000000000",
        "10110001011",
        "10111111111",
        "10111011011",
        "01101010000",
        "00100100001",
        "10110111111",
    ];
    for (row, want) in rows.iter().zip(expected_digits) {
        assert_eq!(digit_prefix(&row.stream, 11), want, "{}", row.label);
    }

    // Diagonal-match property: every non-pinned line shows the skeleton's
    // digit at its own position.
    for line in 1..=7u64 {
        if line == 3 {
            continue;
        }
        assert_eq!(
            rows[(line - 1) as usize].stream.digit_at(line),
            skeleton.entry(line).digit_at(line),
            "line {line}"
        );
    }
}

#[test]
fn diagonalizing_the_reordered_pool_matches_the_skeleton_run() {
    let pool = reordering_pool();
    let skeleton = ldi_one_ending(Base::BINARY);
    let pinned = [(RationalValue::from_u64(3, 4).unwrap(), 3u64)];
    let rows = skeleton_reorder(&pool, &skeleton, &pinned, 7).unwrap();
    let list = reordered_list(rows, &skeleton, "reordered pool");

    let cfg = DMConfig::new(
        list,
        ReplacementRule::BinaryFlip,
        7,
        EndingConvention::MaxDigitEnding,
    )
    .unwrap();
    let report = cfg.run();

    let skeleton_cfg = DMConfig::new(
        skeleton,
        ReplacementRule::BinaryFlip,
        7,
        EndingConvention::MaxDigitEnding,
    )
    .unwrap();
    let skeleton_report = skeleton_cfg.run();

    let prefixes: Vec<String> = report.trace.iter().map(|r| r.prefix.to_string()).collect();
    let skeleton_prefixes: Vec<String> = skeleton_report
        .trace
        .iter()
        .map(|r| r.prefix.to_string())
        .collect();
    assert_eq!(prefixes, skeleton_prefixes);
    assert_eq!(prefixes[0], "0.1");
    assert_eq!(prefixes[6], "0.1100000");

    assert_eq!(report.tail, TailVerdict::ConstantTail { digit: 0, from: 3 });
    assert_eq!(report.limit, Some(RationalValue::from_u64(3, 4).unwrap()));
    // The limit is exactly the value pinned at line 3.
    assert_eq!(report.membership, Membership::InList(BigUint::from(3u32)));
    assert_eq!(
        skeleton_report.membership,
        Membership::InList(BigUint::from(3u32))
    );
}

#[test]
fn identity_prefix_when_pool_already_matches() {
    let skeleton = ldi_one_ending(Base::BINARY);
    let pool: Vec<diaglab_core::shuffle::PoolEntry> = (1..=5)
        .map(|n| {
            diaglab_core::shuffle::PoolEntry::new(
                format!("entry {n}"),
                skeleton.entry(n).limit_value(),
                skeleton.entry(n),
            )
        })
        .collect();
    let rows = skeleton_reorder(&pool, &skeleton, &[], 5).unwrap();
    let labels: Vec<&str> = rows.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(
        labels,
        ["entry 1", "entry 2", "entry 3", "entry 4", "entry 5"]
    );
}

#[test]
fn exhausted_pool_is_an_error() {
    let skeleton = ldi_one_ending(Base::BINARY);
    // All-zero entries match the skeleton's first two diagonal digits (both
    // 0) but cannot supply the 1 demanded at line 3.
    let zero = diaglab_core::WritableNumber::zero(Base::BINARY);
    let pool: Vec<diaglab_core::shuffle::PoolEntry> = (0..3)
        .map(|i| {
            diaglab_core::shuffle::PoolEntry::new(
                format!("zero {i}"),
                Some(RationalValue::zero()),
                diaglab_core::DigitStream::of_writable(&zero).unwrap(),
            )
        })
        .collect();
    let err = skeleton_reorder(&pool, &skeleton, &[], 3);
    assert!(matches!(
        err,
        Err(diaglab_core::DiagonalError::PoolExhausted { .. })
    ));
}
