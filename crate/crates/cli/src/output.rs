use std::fs::OpenOptions;
use std::io::{self, BufWriter, Write};

use derangement_core::proof::{VerificationReport, SCHEMA_VERSION};
use serde_json::Value;

use crate::args::{Cli, Format};

/// Destination for one run: stdout, or a file opened for appending.
pub struct Sink {
    format: Format,
    out: Box<dyn Write>,
}

impl Sink {
    pub fn open(cli: &Cli) -> io::Result<Self> {
        let out: Box<dyn Write> = match &cli.global.output {
            Some(path) => Box::new(BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { format: cli.global.format, out })
    }

    pub fn header(&mut self, cli: &Cli) -> io::Result<()> {
        let config = serde_json::to_value(cli).expect("config is plain data");
        match self.format {
            Format::Records => {
                let record = serde_json::json!({ "schema": SCHEMA_VERSION, "config": config });
                writeln!(self.out, "{record}")
            }
            Format::Text => writeln!(self.out, "# derangements {} {}", cli.command.name(), flatten(&config)),
        }
    }

    pub fn report(&mut self, report: &VerificationReport) -> io::Result<()> {
        match self.format {
            Format::Records => writeln!(self.out, "{}", report.to_record()),
            Format::Text => self.text_report(report, None),
        }
    }

    /// Like [`Sink::report`], but in text mode the witnesses are replaced by
    /// preformatted lines.
    pub fn report_with_text(&mut self, report: &VerificationReport, lines: &[String]) -> io::Result<()> {
        match self.format {
            Format::Records => writeln!(self.out, "{}", report.to_record()),
            Format::Text => self.text_report(report, Some(lines)),
        }
    }

    fn text_report(&mut self, report: &VerificationReport, lines: Option<&[String]>) -> io::Result<()> {
        let status = serde_json::to_value(report.status).expect("status serializes");
        writeln!(self.out, "{}: {}", report.claim_id, status.as_str().unwrap_or_default())?;
        for (key, value) in &report.params {
            writeln!(self.out, "  {key} = {}", scalar(value))?;
        }
        if let Some(ms) = report.elapsed_ms {
            writeln!(self.out, "  elapsed = {ms:.1} ms")?;
        }
        match lines {
            Some(lines) => {
                for line in lines {
                    writeln!(self.out, "  {line}")?;
                }
            }
            None => {
                for w in &report.witnesses {
                    writeln!(self.out, "  - {w}")?;
                }
            }
        }
        if let Some(c) = &report.counterexample {
            writeln!(self.out, "  counterexample: {c}")?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key=value` pairs of a flat JSON object, in key order.
fn flatten(config: &Value) -> String {
    let Value::Object(map) = config else { return config.to_string() };
    let mut pairs: Vec<(&String, &Value)> = map.iter().filter(|(_, v)| !v.is_null()).collect();
    pairs.sort_by(|a, b| a.0.cmp(b.0));
    pairs.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" ")
}
