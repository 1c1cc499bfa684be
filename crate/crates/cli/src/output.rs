use std::io::Write;

use serde_json::{json, Map, Value};

use crate::cli::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// A command result: JSON document plus a flat table for CSV and text.
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Shorter cells for text output; `rows` is used when empty.
    pub text_rows: Vec<Vec<String>>,
    /// Free-form lines appended to text output.
    pub text_notes: Vec<String>,
    pub text_table: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            text_rows: Vec::new(),
            text_notes: Vec::new(),
            text_table: true,
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn write(&self, format: Format, prec: u32, seed: u64, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
                doc.insert("command".into(), json!(self.command));
                doc.insert("precision_bits".into(), json!(prec));
                doc.insert("seed".into(), json!(seed));
                doc.extend(self.fields.clone());
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Text => self.write_text(prec, seed, out),
        }
    }

    fn write_text(&self, prec: u32, seed: u64, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "# {} (prec {prec} bits, seed {seed})", self.command)?;
        for (k, v) in &self.fields {
            match v {
                Value::Array(_) | Value::Object(_) => {}
                Value::String(s) => writeln!(out, "{k}: {}", abbreviate(s))?,
                other => writeln!(out, "{k}: {other}")?,
            }
        }
        for note in &self.text_notes {
            writeln!(out, "{note}")?;
        }
        let rows = if self.text_rows.is_empty() { &self.rows } else { &self.text_rows };
        if rows.is_empty() || !self.text_table {
            return Ok(());
        }
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|c| abbreviate(c)).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for row in &rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

/// Shorten a long decimal to 20 significant digits for display.
fn abbreviate(s: &str) -> String {
    const KEEP: usize = 20;
    if s.len() <= KEEP + 6 || s.parse::<f64>().is_err() {
        return s.to_string();
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], &s[k..]),
        None => (s, ""),
    };
    let digits_seen = |m: &str| m.chars().filter(char::is_ascii_digit).count();
    let mut cut = mantissa.len();
    for (i, _) in mantissa.char_indices().rev() {
        if digits_seen(&mantissa[..i]) < KEEP {
            break;
        }
        cut = i;
    }
    format!("{}{exp}", &mantissa[..cut])
}

pub fn error_json(kind: &str, message: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "kind": kind, "message": message },
    })
}
