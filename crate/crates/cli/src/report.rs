//! Report assembly and JSON/CSV output.

use crate::args::Format;
use serde_json::{Map, Value};
use std::io::Write;

pub type Row = Map<String, Value>;

#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub rows: Vec<Row>,
    pub failures: Vec<String>,
    pub summary: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        m.insert("failures".into(), self.failures.clone().into());
        if let Some(s) = &self.summary {
            m.insert("summary".into(), s.clone());
        }
        Value::Object(m)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut header: Vec<&String> = Vec::new();
                for row in &self.rows {
                    for k in row.keys() {
                        if !header.contains(&k) {
                            header.push(k);
                        }
                    }
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&header)?;
                for row in &self.rows {
                    w.write_record(header.iter().map(|k| match row.get(*k) {
                        None | Some(Value::Null) => String::new(),
                        Some(Value::String(s)) => s.clone(),
                        Some(v) => v.to_string(),
                    }))?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Builds a row from `(key, value)` pairs, keeping their order.
#[macro_export]
macro_rules! row {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::report::Row::new();
        $( r.insert($k.to_string(), serde_json::json!($v)); )*
        r
    }};
}
