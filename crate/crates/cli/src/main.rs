//! diaglab: reference tables, diagonal-method runs, digit oracles, and the
//! verification suite, on exact arithmetic end to end.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use diaglab::checks::all_checks;
use diaglab::report::{ConfigDoc, ReportDoc};
use diaglab::table::{self, TableDoc};
use diaglab_core::diagonal::{DMConfig, ReplacementRule};
use diaglab_core::lists::{l1, ldi, ldi_one_ending};
use diaglab_core::numeral::{Base, EndingConvention};
use diaglab_core::oracles::{stream_of_constant, ConstantName};
use diaglab_core::shuffle::Shuffle;
use diaglab_core::ListSpec;

#[derive(Parser)]
#[command(
    name = "diaglab",
    version,
    about = "Exact-arithmetic playground for positional numerals, enumeration codecs, and the diagonal method"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Render a reference table (ids 1, 2, 4, 5, 6, 7, 8, 9; the grid view
    /// of the integer x fraction product is `table 2 --grid`).
    Table {
        id: u32,
        /// Rows to render; defaults to the printed row count of the figure.
        #[arg(long)]
        rows: Option<u64>,
        /// Grid columns (only with --grid).
        #[arg(long)]
        cols: Option<u64>,
        /// Render table 2's underlying integer x fraction grid.
        #[arg(long)]
        grid: bool,
        /// Base for table 2.
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the diagonal method over a named list and report the outcome.
    Diagonal {
        /// List name: l1, ldi, ldi-prime (s0-shuffled), ldi-dprime
        /// (max-digit-ending, zero removed).
        #[arg(long)]
        list: String,
        #[arg(long, default_value_t = 2)]
        base: u32,
        /// Replacement rule: flip, hawking, hofstadter, penrose, dunham.
        #[arg(long, default_value = "flip")]
        rule: String,
        /// Extra shuffle: s0, swap:i,j, or compose:spec+spec+...
        #[arg(long)]
        shuffle: Option<String>,
        /// Ending convention for reading entries: zero, max (aliases: nine, one).
        #[arg(long)]
        ending: Option<String>,
        /// Rows to scan; defaults to DIAGLAB_DEPTH or 20.
        #[arg(long)]
        depth: Option<u64>,
        /// Seed for the dunham rule.
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on materialized trace rows.
        #[arg(long)]
        trace_rows: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print guaranteed-correct digits of a supported constant.
    Digits {
        /// One of: sqrt2-1, sqrt3-1, log2, pi-3, e-2.
        constant: String,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long, default_value_t = 11)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the verification suite; exit 0 only if every check passes.
    Verify {
        /// Run a single check by id (e.g. --only table7).
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A usage problem (exit 2), distinct from a verification failure (exit 1).
struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Table {
            id,
            rows,
            cols,
            grid,
            base,
            format,
        } => cmd_table(id, rows, cols, grid, base, format),
        Command::Diagonal {
            list,
            base,
            rule,
            shuffle,
            ending,
            depth,
            seed,
            trace_rows,
            format,
        } => cmd_diagonal(
            &list, base, &rule, shuffle, ending, depth, seed, trace_rows, format,
        ),
        Command::Digits {
            constant,
            base,
            count,
            format,
        } => cmd_digits(&constant, base, count, format),
        Command::Verify { only, format } => cmd_verify(only, format),
    }
}

fn parse_base(base: u32) -> Result<Base, UsageError> {
    Base::new(base).map_err(|e| UsageError(e.to_string()))
}

fn cmd_table(
    id: u32,
    rows: Option<u64>,
    cols: Option<u64>,
    grid: bool,
    base: u32,
    format: Format,
) -> Result<ExitCode, UsageError> {
    let rows = rows.unwrap_or(table::default_rows(if grid { 3 } else { id }));
    let doc: TableDoc = match (id, grid) {
        (2, true) => table::table3(rows, cols.unwrap_or(7)),
        (1, false) => table::table1(rows),
        (2, false) => table::table2(rows, parse_base(base)?),
        (3, false) => {
            return Err(UsageError(
                "table 3 is the grid view: use `table 2 --grid`".into(),
            ))
        }
        (4, false) => table::table4(rows),
        (5, false) => table::table5(rows),
        (6, false) => table::table6(),
        (7, false) => table::table7().map_err(|e| UsageError(e.to_string()))?,
        (8, false) => table::table8(rows),
        (9, false) => table::table9(rows),
        (other, _) => return Err(UsageError(format!("unknown table {other}"))),
    };
    print!(
        "{}",
        match format {
            Format::Text => doc.to_text(),
            Format::Csv => doc.to_csv(),
            Format::Json => doc.to_json(),
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_ending(token: &str) -> Result<EndingConvention, UsageError> {
    match token {
        "zero" | "0" => Ok(EndingConvention::ZeroEnding),
        "max" | "nine" | "one" => Ok(EndingConvention::MaxDigitEnding),
        other => Err(UsageError(format!(
            "unknown ending {other:?} (use zero or max)"
        ))),
    }
}

fn parse_rule(token: &str, seed: Option<u64>) -> Result<ReplacementRule, UsageError> {
    match token {
        "flip" => Ok(ReplacementRule::BinaryFlip),
        "hawking" | "add1" => Ok(ReplacementRule::AddOneMod10),
        "hofstadter" | "sub1" => Ok(ReplacementRule::SubOneMod10),
        "penrose" => Ok(ReplacementRule::PenroseTwoOne),
        "dunham" => Ok(ReplacementRule::DunhamRandom {
            seed: seed.unwrap_or(0),
        }),
        other => Err(UsageError(format!(
            "unknown rule {other:?} (flip, hawking, hofstadter, penrose, dunham)"
        ))),
    }
}

fn parse_shuffle(spec: &str) -> Result<Shuffle, UsageError> {
    if let Some(rest) = spec.strip_prefix("compose:") {
        let mut combined = Shuffle::identity();
        for part in rest.split('+') {
            combined = combined.then(&parse_shuffle(part)?);
        }
        return Ok(combined);
    }
    if let Some(args) = spec.strip_prefix("swap:") {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 2 {
            return Err(UsageError(format!("swap needs two indices, got {spec:?}")));
        }
        let i: u64 = parts[0]
            .parse()
            .map_err(|_| UsageError(format!("bad swap index {:?}", parts[0])))?;
        let j: u64 = parts[1]
            .parse()
            .map_err(|_| UsageError(format!("bad swap index {:?}", parts[1])))?;
        return Ok(Shuffle::swap(i, j));
    }
    match spec {
        "s0" => Ok(Shuffle::s0()),
        "identity" => Ok(Shuffle::identity()),
        other => Err(UsageError(format!(
            "unknown shuffle {other:?} (s0, swap:i,j, compose:a+b)"
        ))),
    }
}

fn build_list(name: &str, base: Base) -> Result<(ListSpec, EndingConvention), UsageError> {
    match name {
        "l1" => {
            if base != Base::BINARY {
                return Err(UsageError("list l1 is binary".into()));
            }
            Ok((l1(), EndingConvention::ZeroEnding))
        }
        "ldi" => Ok((
            ldi(base, EndingConvention::ZeroEnding),
            EndingConvention::ZeroEnding,
        )),
        "ldi-prime" => Ok((
            Shuffle::s0().apply(&ldi(base, EndingConvention::ZeroEnding)),
            EndingConvention::ZeroEnding,
        )),
        "ldi-dprime" => Ok((ldi_one_ending(base), EndingConvention::MaxDigitEnding)),
        other => Err(UsageError(format!(
            "unknown list {other:?} (l1, ldi, ldi-prime, ldi-dprime)"
        ))),
    }
}

fn default_depth() -> u64 {
    std::env::var("DIAGLAB_DEPTH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(20)
}

#[allow(clippy::too_many_arguments)]
fn cmd_diagonal(
    list_name: &str,
    base: u32,
    rule_name: &str,
    shuffle: Option<String>,
    ending: Option<String>,
    depth: Option<u64>,
    seed: Option<u64>,
    trace_rows: Option<u64>,
    format: Format,
) -> Result<ExitCode, UsageError> {
    let base = parse_base(base)?;
    let (mut list, native_ending) = build_list(list_name, base)?;
    let mut shuffle_label = String::new();
    if let Some(spec) = &shuffle {
        let s = parse_shuffle(spec)?;
        shuffle_label = format!(" + {}", s.label());
        list = s.apply(&list);
    }
    let ending = match &ending {
        Some(token) => parse_ending(token)?,
        None => native_ending,
    };
    let rule = parse_rule(rule_name, seed)?;
    let depth = depth.unwrap_or_else(default_depth);
    let mut cfg =
        DMConfig::new(list, rule, depth, ending).map_err(|e| UsageError(e.to_string()))?;
    if let Some(rows) = trace_rows {
        cfg = cfg.with_trace_rows(rows);
    }
    let report = cfg.run();
    let doc = ReportDoc::new(
        ConfigDoc {
            list: format!("{list_name}{shuffle_label}"),
            base: base.get(),
            rule: rule_name.to_string(),
            ending: ending.to_string(),
            depth,
            seed: match rule {
                ReplacementRule::DunhamRandom { seed } => Some(seed),
                _ => None,
            },
        },
        &report,
    );
    print!(
        "{}",
        match format {
            Format::Text => diaglab::report::render_text(&cfg, &report, &doc),
            Format::Csv => doc.to_csv(),
            Format::Json => doc.to_json(),
        }
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize, Deserialize)]
struct DigitsDoc {
    constant: String,
    label: String,
    base: u32,
    count: u64,
    digits: String,
}

fn cmd_digits(
    constant: &str,
    base: u32,
    count: u64,
    format: Format,
) -> Result<ExitCode, UsageError> {
    let name = ConstantName::parse_token(constant).ok_or_else(|| {
        UsageError(format!(
            "unknown constant {constant:?} (sqrt2-1, sqrt3-1, log2, pi-3, e-2)"
        ))
    })?;
    let base = parse_base(base)?;
    let stream = stream_of_constant(name, base);
    let mut digits = String::from("0.");
    for pos in 1..=count {
        digits.push_str(&stream.digit_at(pos).to_string());
    }
    digits.push_str("...");
    match format {
        Format::Text => println!("{digits}"),
        Format::Csv => {
            println!("constant,base,count,digits");
            println!("{},{},{},{}", name.token(), base.get(), count, digits);
        }
        Format::Json => {
            let doc = DigitsDoc {
                constant: name.token().into(),
                label: name.label().into(),
                base: base.get(),
                count,
                digits,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("digits serialize")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckDoc {
    id: &'static str,
    description: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn cmd_verify(only: Option<String>, format: Format) -> Result<ExitCode, UsageError> {
    let checks = all_checks();
    let selected: Vec<_> = match &only {
        Some(id) => {
            let filtered: Vec<_> = checks.into_iter().filter(|c| c.id == id).collect();
            if filtered.is_empty() {
                return Err(UsageError(format!("unknown check {id:?}")));
            }
            filtered
        }
        None => checks,
    };
    // Checks are independent; run them in parallel but report in id order.
    let results: Vec<CheckDoc> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|check| {
                let run = check.run;
                (check.id, check.description, scope.spawn(run))
            })
            .collect();
        handles
            .into_iter()
            .map(|(id, description, handle)| {
                let outcome = handle
                    .join()
                    .unwrap_or_else(|_| Err("check panicked".into()));
                CheckDoc {
                    id,
                    description,
                    ok: outcome.is_ok(),
                    detail: outcome.err(),
                }
            })
            .collect()
    });
    let failed = results.iter().filter(|r| !r.ok).count();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&results).expect("checks serialize")
        ),
        Format::Csv => {
            println!("id,ok,description");
            for r in &results {
                println!(
                    "{},{},{}",
                    r.id,
                    if r.ok { "ok" } else { "FAIL" },
                    r.description
                );
            }
        }
        Format::Text => {
            for r in &results {
                match &r.detail {
                    None => println!("ok   {:<10} {}", r.id, r.description),
                    Some(detail) => println!("FAIL {:<10} {}: {detail}", r.id, r.description),
                }
            }
            if failed == 0 {
                println!("all {} checks passed", results.len());
            } else {
                println!("{failed} of {} checks failed", results.len());
            }
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
