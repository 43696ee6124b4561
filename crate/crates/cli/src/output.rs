//! CSV and JSON writers shared by every command.
//!
//! CSV: `# key: value` metadata lines, a header row, then one record per row,
//! floats as `{:.16e}` (17 significant digits, enough to round-trip), LF line
//! endings. JSON: `{"meta": {...}, "data": {column: [values in row order]}}`.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // non-finite values have no JSON number form
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One command's result: metadata, column names and records.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        let mut meta = Map::new();
        meta.insert("command".into(), command.into());
        meta.insert(
            "version".into(),
            concat!("nlcs ", env!("CARGO_PKG_VERSION")).into(),
        );
        Self {
            meta,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    /// Finite floats as JSON numbers, anything else as `null`.
    pub fn meta_float(&mut self, key: &str, value: f64) -> &mut Self {
        let v = serde_json::Number::from_f64(value).map_or(Value::Null, Value::Number);
        self.meta(key, v)
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n
                    .as_f64()
                    .filter(|_| n.is_f64())
                    .map_or_else(|| n.to_string(), format_float),
                other => other.to_string(),
            };
            writeln!(out, "# {k}: {text}").expect("writing to memory");
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))
                .expect("writing to memory");
        }
        w.into_inner().expect("flushing memory buffer")
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut data = Map::new();
        for (c, name) in self.columns.iter().enumerate() {
            let column: Vec<Value> = self.rows.iter().map(|r| r[c].json()).collect();
            data.insert((*name).into(), Value::Array(column));
        }
        let mut doc = Map::new();
        doc.insert("meta".into(), Value::Object(self.meta.clone()));
        doc.insert("data".into(), Value::Object(data));
        let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc)).expect("serializable");
        bytes.push(b'\n');
        bytes
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Explicit `--format`, else the `--out` extension, else CSV.
pub fn resolve_format(explicit: Option<Format>, out: Option<&Path>) -> Format {
    explicit.unwrap_or_else(|| {
        match out
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("json") => Format::Json,
            _ => Format::Csv,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("pdist", vec!["n", "p"]);
        t.meta("recipe", "evolved").meta_float("tau", 2.32);
        t.rows.push(vec![Cell::Int(0), Cell::Float(0.125)]);
        t.rows.push(vec![Cell::Int(1), Cell::Float(1.0 / 3.0)]);
        t
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(sample().to_csv()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command: pdist");
        assert!(lines[1].starts_with("# version: nlcs "));
        assert_eq!(lines[2], "# recipe: evolved");
        assert_eq!(lines[3], "# tau: 2.3199999999999998e0");
        assert_eq!(lines[4], "n,p");
        assert_eq!(lines[5], "0,1.2500000000000000e-1");
        assert_eq!(lines[6], "1,3.3333333333333331e-1");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_columns_in_row_order() {
        let v: Value = serde_json::from_slice(&sample().to_json()).unwrap();
        assert_eq!(v["meta"]["command"], "pdist");
        assert_eq!(v["data"]["n"], serde_json::json!([0, 1]));
        assert_eq!(v["data"]["p"][1].as_f64().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn text_cells_are_quoted() {
        let mut t = Table::new("verify", vec!["check", "detail"]);
        t.rows
            .push(vec![Cell::Text("a".into()), Cell::Text("x, \"y\"".into())]);
        let text = String::from_utf8(t.to_csv()).unwrap();
        assert!(text.ends_with("a,\"x, \"\"y\"\"\"\n"));
    }

    #[test]
    fn format_inference() {
        assert_eq!(resolve_format(None, Some(Path::new("q.JSON"))), Format::Json);
        assert_eq!(resolve_format(None, Some(Path::new("q.csv"))), Format::Csv);
        assert_eq!(resolve_format(None, None), Format::Csv);
        assert_eq!(
            resolve_format(Some(Format::Csv), Some(Path::new("q.json"))),
            Format::Csv
        );
    }
}
