//! Library side of the diaglab command line: reference-table builders, run
//! reports, output rendering, and the verification checks the `verify`
//! subcommand and the acceptance suite share.

pub mod checks;
pub mod report;
pub mod table;

/// How rendered output is formatted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(token: &str) -> Option<OutputFormat> {
        match token {
            "text" => Some(OutputFormat::Text),
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}
