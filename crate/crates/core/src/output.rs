//! Tabular output documents rendered as CSV, JSON or Markdown.
//!
//! Real numbers carry their printed precision. Printing rounds the exact
//! binary value half-to-even, so `log2(6) = 2.58496...` prints as `2.58`.
//! Absent cells print as `--`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const ABSENT: &str = "--";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Csv, Format::Json, Format::Markdown];

    pub fn name(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Markdown => "markdown",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s || (s == "md" && *f == Format::Markdown))
            .ok_or_else(|| Error::UnknownName {
                kind: "format",
                name: s.to_string(),
                choices: "csv, json, markdown".into(),
            })
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real { value: f64, decimals: usize },
    Text(String),
    Absent,
}

impl Cell {
    pub fn real(value: f64, decimals: usize) -> Self {
        Cell::Real { value, decimals }
    }

    pub fn text(value: impl Into<String>) -> Self {
        Cell::Text(value.into())
    }

    pub fn int(value: impl Into<i64>) -> Self {
        Cell::Int(value.into())
    }

    pub fn printed(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real { value, decimals } => format_real(*value, *decimals),
            Cell::Text(s) => s.clone(),
            Cell::Absent => ABSENT.to_string(),
        }
    }

    fn raw(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real { value, .. } => json!(value),
            Cell::Text(s) => json!(s),
            Cell::Absent => Value::Null,
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Real { .. } | Cell::Absent)
    }
}

/// Fixed-point, ties to even, never `-0.00`.
pub fn format_real(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Printed cell text, by row index and column name.
    pub fn printed(&self, row: usize, column: &str) -> Option<String> {
        let col = self.column(column)?;
        self.rows.get(row).map(|r| r[col].printed())
    }

    /// Row whose first cell prints as `key`.
    pub fn row_by_key(&self, key: &str) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| r.first().map(Cell::printed).as_deref() == Some(key))
            .map(Vec::as_slice)
    }
}

/// One or more tables produced by a single invocation.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Document {
    pub tables: Vec<Table>,
}

impl Document {
    pub fn single(table: Table) -> Self {
        Self {
            tables: vec![table],
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }

    /// Each table with its header row; consecutive tables are separated by a blank line.
    pub fn to_csv(&self) -> String {
        let mut blocks = Vec::new();
        for table in &self.tables {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(&table.columns)
                .expect("writing to memory");
            for row in &table.rows {
                writer
                    .write_record(row.iter().map(Cell::printed))
                    .expect("writing to memory");
            }
            let bytes = writer.into_inner().expect("flushing to memory");
            blocks.push(String::from_utf8(bytes).expect("utf-8 cells"));
        }
        blocks.join("\n")
    }

    pub fn to_json(&self) -> String {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "title": t.title,
                    "columns": t.columns,
                    "rows": t.rows.iter()
                        .map(|r| r.iter().map(Cell::printed).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "raw": t.rows.iter()
                        .map(|r| r.iter().map(Cell::raw).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&json!({ "tables": tables }))
            .expect("serialising JSON values");
        out.push('\n');
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("### {}\n\n", table.title));
            let printed: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::printed).collect())
                .collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|c| {
                    printed
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([table.columns[c].chars().count(), 3])
                        .max()
                        .unwrap_or(3)
                })
                .collect();
            let numeric: Vec<bool> = (0..table.columns.len())
                .map(|c| !table.rows.is_empty() && table.rows.iter().all(|r| r[c].is_numeric()))
                .collect();
            let line = |cells: &[String]| {
                let body: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .zip(&numeric)
                    .map(|((s, &w), &num)| {
                        if num {
                            format!("{s:>w$}")
                        } else {
                            format!("{s:<w$}")
                        }
                    })
                    .collect();
                format!("| {} |\n", body.join(" | "))
            };
            out.push_str(&line(&table.columns));
            let rule: Vec<String> = widths
                .iter()
                .zip(&numeric)
                .map(|(&w, &num)| {
                    if num {
                        format!("{}:", "-".repeat(w - 1))
                    } else {
                        "-".repeat(w)
                    }
                })
                .collect();
            out.push_str(&format!("| {} |\n", rule.join(" | ")));
            for row in &printed {
                out.push_str(&line(row));
            }
        }
        out
    }
}
