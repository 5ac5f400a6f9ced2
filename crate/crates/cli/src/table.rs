//! The reference tables as structured documents, plus text/CSV/JSON
//! rendering. Text output is deterministic down to the byte: fixed column
//! order, no locale, no floating point anywhere.

use serde::{Deserialize, Serialize};

use diaglab_core::diagonal::{DMConfig, Membership, ReplacementRule, TailVerdict};
use diaglab_core::enumerate::{applicative_list, lex_list, render_symbols};
use diaglab_core::lists::{l1, ldi, ldi_one_ending, reordering_pool};
use diaglab_core::numeral::{big_to_digits, Base, EndingConvention, RationalValue};
use diaglab_core::shuffle::{skeleton_reorder, Shuffle};
use diaglab_core::stream::DigitStream;
use diaglab_core::DiagonalError;

/// A rendered table: column headers and string cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub id: String,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableDoc {
    pub fn to_text(&self) -> String {
        let cols = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate().take(cols) {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        let line = |cells: &[String], widths: &[usize]| -> String {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(cell);
                if i + 1 < cells.len() {
                    for _ in cell.len()..widths[i] {
                        s.push(' ');
                    }
                }
            }
            s
        };
        out.push_str(&line(&self.headers, &widths));
        out.push('\n');
        let dashes: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&dashes, &widths));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row, &widths));
            out.push('\n');
        }
        out
    }

    /// Comma-separated with a header row and no quoting; the few labels that
    /// contain commas (table 9's column titles) have them dropped.
    pub fn to_csv(&self) -> String {
        let cell = |s: &String| s.replace(", ", " ").replace(',', " ");
        let mut out = String::new();
        out.push_str(&self.headers.iter().map(cell).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
        s.push('\n');
        s
    }
}

/// Default printed row counts, matching the reference figures.
pub fn default_rows(id: u32) -> u64 {
    match id {
        1 => 5,
        2 => 9,
        3 => 7,
        4 => 10,
        5 => 9,
        6 => 4,
        7 => 7,
        8 => 17,
        9 => 39,
        _ => 10,
    }
}

/// Render a list entry as a fixed-width stream prefix: `0.010...` style.
fn stream_cell(stream: &DigitStream, digits: u64) -> String {
    let mut s = String::from("0.");
    for pos in 1..=digits {
        s.push_str(&stream.digit_at(pos).to_string());
    }
    s.push_str("...");
    s
}

fn binary_label(n: u64) -> String {
    big_to_digits(&n.into(), Base::BINARY)
        .iter()
        .map(|d| d.to_string())
        .collect()
}

/// Table 1: the worked counterexample list and its partial antidiagonals.
pub fn table1(rows: u64) -> TableDoc {
    let cfg = DMConfig::new(
        l1(),
        ReplacementRule::BinaryFlip,
        rows,
        EndingConvention::ZeroEnding,
    )
    .expect("binary rule on binary list")
    .with_trace_rows(rows);
    let report = cfg.run();
    let list = cfg.list();
    let doc_rows = report
        .trace
        .iter()
        .map(|trace| {
            let n = trace.row;
            let position = trace.position.as_ref().expect("l1 ranks every prefix");
            let entry_at_position = {
                let index = u64::try_from(position).expect("small positions");
                list.entry(index).truncate(n) // same digit count as the prefix
            };
            vec![
                n.to_string(),
                stream_cell(&list.entry(n), 8),
                trace.prefix.to_string(),
                position.to_string(),
                entry_at_position.to_string(),
            ]
        })
        .collect();
    TableDoc {
        id: "table1".into(),
        title: "Table 1: list L1 and the partial antidiagonals D|n".into(),
        headers: vec![
            "n".into(),
            "L1(n)".into(),
            "D(L1)|n".into(),
            "Pos(D|n) in L1".into(),
            "L1(Pos(D|n))|n".into(),
        ],
        rows: doc_rows,
    }
}

/// Table 2: the digital-inversion list in a given base.
pub fn table2(rows: u64, base: Base) -> TableDoc {
    let list = ldi(base, EndingConvention::ZeroEnding);
    let doc_rows = (0..rows)
        .map(|n| {
            let digits: String = big_to_digits(&n.into(), base)
                .iter()
                .map(|d| d.to_string())
                .collect();
            vec![n.to_string(), digits, stream_cell(&list.entry(n), 8)]
        })
        .collect();
    TableDoc {
        id: "table2".into(),
        title: format!("Table 2: the list LDI of all fractional numbers writable in base {base}"),
        headers: vec!["n".into(), format!("Base{base}(n)"), "LDI(n)".into()],
        rows: doc_rows,
    }
}

/// Table 3: the integer x fractional grid behind the full writable-number
/// listing, rendered via `table 2 --grid`.
pub fn table3(rows: u64, cols: u64) -> TableDoc {
    let frac = ldi(Base::BINARY, EndingConvention::ZeroEnding);
    let mut headers = vec![String::new()];
    for j in 0..cols {
        let label: String = frac
            .entry(j)
            .finite_form()
            .expect("finite entries")
            .fractional_digits()
            .iter()
            .map(|d| d.to_string())
            .collect();
        headers.push(format!(".{label}"));
    }
    let doc_rows = (0..rows)
        .map(|i| {
            let mut row = vec![binary_label(i)];
            for j in 0..cols {
                let frac_label: String = frac
                    .entry(j)
                    .finite_form()
                    .expect("finite entries")
                    .fractional_digits()
                    .iter()
                    .map(|d| d.to_string())
                    .collect();
                row.push(format!("{}.{}", binary_label(i), frac_label));
            }
            row
        })
        .collect();
    TableDoc {
        id: "table3".into(),
        title: "Table 3: Cartesian product of the integer and fractional parts".into(),
        headers,
        rows: doc_rows,
    }
}

/// Table 4: the s0-shuffled inversion list and where each partial
/// antidiagonal reappears.
pub fn table4(rows: u64) -> TableDoc {
    let list = Shuffle::s0().apply(&ldi(Base::BINARY, EndingConvention::ZeroEnding));
    let cfg = DMConfig::new(
        list,
        ReplacementRule::BinaryFlip,
        rows,
        EndingConvention::ZeroEnding,
    )
    .expect("binary rule on binary list")
    .with_trace_rows(rows);
    let report = cfg.run();
    let shuffle = Shuffle::s0();
    let doc_rows = report
        .trace
        .iter()
        .map(|trace| {
            let n = trace.row;
            vec![
                n.to_string(),
                shuffle.map(n).to_string(),
                stream_cell(&cfg.list().entry(n), 11),
                trace.prefix.to_string(),
                trace
                    .position
                    .as_ref()
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    TableDoc {
        id: "table4".into(),
        title: "Table 4: the shuffled list LDI' = s0 * LDI under the diagonal method".into(),
        headers: vec![
            "n".into(),
            "S0(n)".into(),
            "LDI'(n)".into(),
            "D(LDI')|n".into(),
            "Pos(D(LDI')|n)".into(),
        ],
        rows: doc_rows,
    }
}

/// Table 5: the max-digit-ending list without zero.
pub fn table5(rows: u64) -> TableDoc {
    let cfg = DMConfig::new(
        ldi_one_ending(Base::BINARY),
        ReplacementRule::BinaryFlip,
        rows,
        EndingConvention::MaxDigitEnding,
    )
    .expect("binary rule on binary list")
    .with_trace_rows(rows);
    let report = cfg.run();
    let doc_rows = report
        .trace
        .iter()
        .map(|trace| {
            let n = trace.row;
            vec![
                n.to_string(),
                stream_cell(&cfg.list().entry(n), 11),
                trace.prefix.to_string(),
                trace
                    .position
                    .as_ref()
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    TableDoc {
        id: "table5".into(),
        title: "Table 5: the 1-ending list LDI'' (zero removed) under the diagonal method".into(),
        headers: vec![
            "n".into(),
            "LDI''(n)".into(),
            "D(LDI'')|n".into(),
            "Pos(D(LDI'')|n)".into(),
        ],
        rows: doc_rows,
    }
}

/// One row of table 6: run the named base-10 variant and report its outcome.
fn table6_row(
    author: &str,
    rule: ReplacementRule,
    ending: EndingConvention,
    ending_label: &str,
    shuffled: bool,
) -> Vec<String> {
    let base_list = ldi(Base::DECIMAL, EndingConvention::ZeroEnding);
    let list = if shuffled {
        Shuffle::s0().apply(&base_list)
    } else {
        base_list
    };
    let cfg = DMConfig::new(list, rule, 64, ending).expect("decimal rules on decimal list");
    let report = cfg.run();
    let (forced, value) = match (&report.tail, &report.limit) {
        (TailVerdict::ConstantTail { .. }, Some(limit)) => ("yes", limit.to_string()),
        _ => (
            "no",
            if matches!(rule, ReplacementRule::DunhamRandom { .. }) {
                "random".to_string()
            } else {
                "rational".to_string()
            },
        ),
    };
    vec![
        author.to_string(),
        rule.label(),
        forced.to_string(),
        ending_label.to_string(),
        if shuffled { "yes" } else { "-" }.to_string(),
        value,
    ]
}

/// Table 6: the four popular base-10 replacement-rule variants applied to
/// the inversion list.
pub fn table6() -> TableDoc {
    let rows = vec![
        table6_row(
            "S. Hawking",
            ReplacementRule::AddOneMod10,
            EndingConvention::MaxDigitEnding,
            "9-ending",
            true,
        ),
        table6_row(
            "D. R. Hofstadter",
            ReplacementRule::SubOneMod10,
            EndingConvention::ZeroEnding,
            "0-ending",
            true,
        ),
        table6_row(
            "R. Penrose",
            ReplacementRule::PenroseTwoOne,
            EndingConvention::ZeroEnding,
            "any",
            false,
        ),
        table6_row(
            "W. Dunham",
            ReplacementRule::DunhamRandom { seed: 0 },
            EndingConvention::ZeroEnding,
            "any",
            false,
        ),
    ];
    TableDoc {
        id: "table6".into(),
        title: "Table 6: base-10 diagonal-method variants applied to LDI".into(),
        headers: vec![
            "Author".into(),
            "Replacement digit".into(),
            "Can be forced to fail?".into(),
            "Ending".into(),
            "S0 applied".into(),
            "Val(D)".into(),
        ],
        rows,
    }
}

/// Table 7: the pool of reals before and after the skeleton reordering.
pub fn table7() -> Result<TableDoc, DiagonalError> {
    let pool = reordering_pool();
    let skeleton = ldi_one_ending(Base::BINARY);
    let pinned = [(
        RationalValue::from_u64(3, 4).expect("nonzero denominator"),
        3u64,
    )];
    let reordered = skeleton_reorder(&pool, &skeleton, &pinned, 7)?;
    let rows = (0..7usize)
        .map(|i| {
            vec![
                (i + 1).to_string(),
                pool[i].label.clone(),
                stream_cell(&pool[i].stream, 11),
                reordered[i].label.clone(),
                stream_cell(&reordered[i].stream, 11),
            ]
        })
        .collect();
    Ok(TableDoc {
        id: "table7".into(),
        title: "Table 7: reordering LR so its diagonal and third element match LDI''".into(),
        headers: vec![
            "n".into(),
            "LR(n)".into(),
            "Base2(LR(n))".into(),
            "LR'(n)".into(),
            "Base2(LR'(n))".into(),
        ],
        rows,
    })
}

fn successor_label(n: u64) -> String {
    match n {
        0 => "0".into(),
        1 => "s(0)".into(),
        _ => format!("s^{n}(0)"),
    }
}

/// Table 8: non-negative integers against their binary indicator strings.
pub fn table8(rows: u64) -> TableDoc {
    let mut headers = vec!["n".into(), "...".into()];
    for power in (0..7).rev() {
        headers.push(successor_label(power));
    }
    let doc_rows = (0..rows)
        .map(|n| {
            let mut row = vec![successor_label(n), "...".into()];
            for bit in (0..7).rev() {
                row.push(((n >> bit) & 1).to_string());
            }
            row
        })
        .collect();
    TableDoc {
        id: "table8".into(),
        title: "Table 8: integers and their binary choice-of-powers representation".into(),
        headers,
        rows: doc_rows,
    }
}

/// Table 9: standard lexicographic versus applicative ordering for three
/// symbols and up to three digits.
pub fn table9(rows: u64) -> TableDoc {
    let standard = lex_list(3, 3);
    let applicative = applicative_list(3, 3).expect("square block");
    let count = rows.min(standard.len() as u64);
    let doc_rows = (0..count)
        .map(|i| {
            vec![
                (i + 1).to_string(),
                render_symbols(&standard[i as usize]),
                render_symbols(&applicative[i as usize]),
            ]
        })
        .collect();
    TableDoc {
        id: "table9".into(),
        title: "Table 9: standard and applicative orderings of strings over 3 symbols".into(),
        headers: vec![
            "n".into(),
            "Standard (3, 3)".into(),
            "Applicative (3, 3)".into(),
        ],
        rows: doc_rows,
    }
}

/// Report-style summary of membership for table rendering.
pub fn membership_text(m: &Membership) -> String {
    match m {
        Membership::InList(p) => format!("in list at position {p}"),
        Membership::NotInListPrefix => "not among the scanned prefix".into(),
        Membership::Undetermined => "undetermined".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table2_reference_strings() {
        let doc = table2(9, Base::BINARY);
        assert_eq!(doc.rows[0][2], "0.00000000...");
        assert_eq!(doc.rows[8][2], "0.00010000...");
        assert_eq!(doc.rows[8][1], "1000");
    }

    #[test]
    fn table6_computed_limits() {
        let doc = table6();
        assert_eq!(doc.rows[0][5], "11/100");
        assert_eq!(doc.rows[1][5], "1/10");
        assert_eq!(doc.rows[2][5], "rational");
        assert_eq!(doc.rows[3][5], "random");
        assert_eq!(doc.rows[2][2], "no");
    }

    #[test]
    fn text_rendering_is_aligned() {
        let doc = table2(3, Base::BINARY);
        let text = doc.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("n  Base2(n)"));
        assert!(lines[2].starts_with("-  --------"));
        assert!(!text.contains(" \n"), "no trailing spaces");
    }

    #[test]
    fn csv_rendering_has_no_stray_commas() {
        let doc = table9(2);
        let csv = doc.to_csv();
        assert_eq!(csv, "n,Standard (3 3),Applicative (3 3)\n1,1,1\n2,2,2\n");
        for line in csv.lines() {
            assert_eq!(line.matches(',').count(), 2);
        }
    }

    #[test]
    fn json_roundtrip_is_identity() {
        let doc = table4(10);
        let json = doc.to_json();
        let parsed: TableDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_json(), json);
    }
}
