use std::io::Write;

use serde_json::Value;

use crate::config::OutputFormat;

/// Rows for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A command result in every supported rendering.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub table: Option<Table>,
}

impl Output {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            table: None,
        }
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn write<W: Write>(&self, format: OutputFormat, mut out: W) -> std::io::Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)
            }
            OutputFormat::Text => {
                write!(out, "{}", self.text)?;
                if !self.text.ends_with('\n') {
                    writeln!(out)?;
                }
                Ok(())
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.header)?;
                        for row in &t.rows {
                            w.write_record(row)?;
                        }
                    }
                    None => {
                        w.write_record(["key", "value"])?;
                        if let Value::Object(map) = &self.json {
                            for (k, v) in map {
                                w.write_record([k.as_str(), &scalar(v)])?;
                            }
                        }
                    }
                }
                w.flush()
            }
        }
    }
}

/// Renders a JSON value as a single CSV cell.
pub fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
