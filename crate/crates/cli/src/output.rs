//! Table rendering: CSV with a header row and JSON with a schema version.

use renyi_core::format::sig12;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => sig12(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => rounded(*x),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// JSON number carrying the same 12 significant digits as the CSV; non-finite values become null.
pub fn rounded(x: f64) -> Value {
    if x.is_finite() {
        json!(sig12(x).parse::<f64>().expect("sig12 output parses"))
    } else {
        Value::Null
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub log_base: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (h, c) in self.header.iter().zip(r) {
                    m.insert(h.clone(), c.json());
                }
                Value::Object(m)
            })
            .collect();
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "log_base": self.log_base,
            "columns": self.header,
            "rows": rows,
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

pub fn write_file(path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::write(path, text)
}

pub fn write_stdout(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()
}
