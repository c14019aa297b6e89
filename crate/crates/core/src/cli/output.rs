use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::config::{Format, RunConfig};
use super::CliError;

const CONFIG_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Result of one command: a table plus scalar summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

pub fn render(config: &RunConfig, report: &Report) -> Result<String, CliError> {
    let config_json = serde_json::to_value(config).map_err(|e| CliError::Config(e.to_string()))?;
    match config.format {
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# bitrial {} {}", config.command, env!("CARGO_PKG_VERSION"));
            let _ = writeln!(out, "{CONFIG_PREFIX}{config_json}");
            for (k, v) in &report.summary {
                let _ = writeln!(out, "# {k}: {v}");
            }
            out.push_str(&report.columns.join(","));
            out.push('\n');
            for row in &report.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect();
            let doc = json!({
                "config": config_json,
                "summary": report.summary,
                "columns": report.columns,
                "rows": rows,
            });
            let mut out = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Config(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// Recovers the run configuration embedded in a CSV header or JSON document.
pub fn embedded_config(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig = if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("not a bitrial JSON file: {e}")))?;
        let cfg = doc
            .get("config")
            .ok_or_else(|| CliError::Config("JSON file has no `config` entry".into()))?;
        serde_json::from_value(cfg.clone()).map_err(|e| CliError::Config(format!("invalid embedded config: {e}")))?
    } else {
        let line = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .find_map(|l| l.strip_prefix(CONFIG_PREFIX))
            .ok_or_else(|| CliError::Config("no `# config:` header line".into()))?;
        serde_json::from_str(line).map_err(|e| CliError::Config(format!("invalid embedded config: {e}")))?
    };
    config.validated()
}
