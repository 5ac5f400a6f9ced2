//! Diagonal-run report rendering: paper-style text tables, CSV trace, and a
//! JSON document that round-trips.

use serde::{Deserialize, Serialize};

use diaglab_core::diagonal::{DMConfig, DMReport, Membership, TailVerdict};

use crate::table::membership_text;

/// Serializable description of a run configuration, as resolved from the
/// command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub list: String,
    pub base: u32,
    pub rule: String,
    pub ending: String,
    pub depth: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub n: u64,
    pub prefix: String,
    /// Decimal string; positions grow past machine integers on deep runs.
    pub position: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDoc {
    pub digit: u32,
    pub from: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MembershipDoc {
    InList { position: String },
    NotInListPrefix,
    Undetermined,
}

/// The complete run outcome: configuration, trace, tail verdict, exact
/// limit, membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub config: ConfigDoc,
    pub trace: Vec<TraceDoc>,
    pub tail: Option<TailDoc>,
    pub limit: Option<String>,
    pub membership: MembershipDoc,
}

impl ReportDoc {
    pub fn new(config: ConfigDoc, report: &DMReport) -> ReportDoc {
        ReportDoc {
            config,
            trace: report
                .trace
                .iter()
                .map(|t| TraceDoc {
                    n: t.row,
                    prefix: t.prefix.to_string(),
                    position: t.position.as_ref().map(|p| p.to_string()),
                })
                .collect(),
            tail: match report.tail {
                TailVerdict::ConstantTail { digit, from } => Some(TailDoc { digit, from }),
                TailVerdict::NoTailWithinDepth => None,
            },
            limit: report.limit.as_ref().map(|l| l.to_string()),
            membership: match &report.membership {
                Membership::InList(p) => MembershipDoc::InList {
                    position: p.to_string(),
                },
                Membership::NotInListPrefix => MembershipDoc::NotInListPrefix,
                Membership::Undetermined => MembershipDoc::Undetermined,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// CSV holds the trace table; the verdict lines are text/JSON content.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,prefix,position\n");
        for t in &self.trace {
            out.push_str(&format!(
                "{},{},{}\n",
                t.n,
                t.prefix,
                t.position.as_deref().unwrap_or("-")
            ));
        }
        out
    }
}

/// Paper-style text rendering: config header, trace table with the list
/// entries alongside, then the verdict lines.
pub fn render_text(cfg: &DMConfig, report: &DMReport, doc: &ReportDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("list: {}\n", doc.config.list));
    out.push_str(&format!("base: {}\n", doc.config.base));
    out.push_str(&format!("rule: {}\n", doc.config.rule));
    out.push_str(&format!("ending: {}\n", doc.config.ending));
    out.push_str(&format!("depth: {}\n", doc.config.depth));
    if let Some(seed) = doc.config.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    out.push('\n');

    let mut table_rows: Vec<Vec<String>> = Vec::new();
    for t in &report.trace {
        let entry = cfg.list().entry(t.row);
        let entry_cell = {
            let mut s = String::from("0.");
            for pos in 1..=11 {
                s.push_str(&entry.digit_at(pos).to_string());
            }
            s.push_str("...");
            s
        };
        table_rows.push(vec![
            t.row.to_string(),
            entry_cell,
            t.prefix.to_string(),
            t.position
                .as_ref()
                .map(|p| p.to_string())
                .unwrap_or_else(|| "-".into()),
        ]);
    }
    let doc_table = crate::table::TableDoc {
        id: "trace".into(),
        title: "trace".into(),
        headers: vec!["n".into(), "entry".into(), "D|n".into(), "Pos(D|n)".into()],
        rows: table_rows,
    };
    // Reuse table rendering minus its title line.
    let rendered = doc_table.to_text();
    out.push_str(rendered.split_once('\n').map(|x| x.1).unwrap_or(""));
    out.push('\n');

    match report.tail {
        TailVerdict::ConstantTail { digit, from } => {
            out.push_str(&format!("tail: constant digit {digit} from position {from}\n"));
        }
        TailVerdict::NoTailWithinDepth => {
            out.push_str(&format!(
                "tail: no constant 0/max tail within depth {}\n",
                doc.config.depth
            ));
        }
    }
    match &report.limit {
        Some(limit) => out.push_str(&format!("limit: {limit}\n")),
        None => out.push_str("limit: -\n"),
    }
    out.push_str(&format!(
        "membership: {}\n",
        membership_text(&report.membership)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use diaglab_core::diagonal::ReplacementRule;
    use diaglab_core::lists::ldi;
    use diaglab_core::numeral::{Base, EndingConvention};
    use diaglab_core::shuffle::Shuffle;

    fn sample() -> (DMConfig, DMReport, ReportDoc) {
        let list = Shuffle::s0().apply(&ldi(Base::BINARY, EndingConvention::ZeroEnding));
        let cfg = DMConfig::new(
            list,
            ReplacementRule::BinaryFlip,
            6,
            EndingConvention::ZeroEnding,
        )
        .unwrap();
        let report = cfg.run();
        let doc = ReportDoc::new(
            ConfigDoc {
                list: "ldi-prime".into(),
                base: 2,
                rule: "flip".into(),
                ending: "zero".into(),
                depth: 6,
                seed: None,
            },
            &report,
        );
        (cfg, report, doc)
    }

    #[test]
    fn json_roundtrip_is_identity() {
        let (_, _, doc) = sample();
        let json = doc.to_json();
        let parsed: ReportDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn text_contains_verdict_lines() {
        let (cfg, report, doc) = sample();
        let text = render_text(&cfg, &report, &doc);
        assert!(text.contains("tail: constant digit 1 from position 2"));
        assert!(text.contains("limit: 1/2"));
        assert!(text.contains("membership: in list at position 0"));
    }

    #[test]
    fn csv_is_the_trace() {
        let (_, _, doc) = sample();
        let csv = doc.to_csv();
        assert!(csv.starts_with("n,prefix,position\n0,0.0,1\n1,0.01,2\n"));
    }
}
