//! Rendering for command output: one report model, three formats.
//!
//! Table mode targets terminals, CSV exports the designated primary table,
//! JSON wraps everything in a versioned envelope. Only the JSON envelope
//! carries a timestamp, so table and CSV output are bytewise reproducible.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::One;

pub const SCHEMA_VERSION: &str = "1";

/// One rendered value; integers stay exact at any width.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u128),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Reduced rational, both parts decimal strings.
    Frac { num: String, den: String },
    Empty,
}

impl Cell {
    pub fn rational(r: &BigRational) -> Cell {
        if r.denom().is_one() {
            Cell::Text(r.numer().to_string())
        } else {
            Cell::Frac {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            }
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Frac { num, den } => format!("{num}/{den}"),
            Cell::Empty => "-".to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => {
                if let Ok(small) = u64::try_from(*v) {
                    serde_json::Value::from(small)
                } else {
                    serde_json::Value::from(v.to_string())
                }
            }
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Bool(v) => serde_json::Value::from(*v),
            Cell::Text(v) => serde_json::Value::from(v.as_str()),
            Cell::Frac { num, den } => serde_json::json!({
                "numerator": num,
                "denominator": den,
            }),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::Int(v as u128)
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Cell {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as u128)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Cell {
        Cell::Int(v as u128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl NamedTable {
    pub fn new(name: &str, columns: &[&str]) -> NamedTable {
        NamedTable {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Cell>,
    pub notes: Vec<String>,
    pub scalars: Vec<(String, Cell)>,
    pub tables: Vec<NamedTable>,
    /// Index into `tables` that CSV mode exports.
    pub primary_table: Option<usize>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            scalars: Vec::new(),
            tables: Vec::new(),
            primary_table: None,
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Cell>) -> Report {
        self.parameters.insert(name.to_string(), value.into());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn scalar(&mut self, name: &str, value: impl Into<Cell>) {
        self.scalars.push((name.to_string(), value.into()));
    }

    /// Adds a table; the first one added becomes the CSV primary unless a
    /// later call to `mark_primary` overrides it.
    pub fn table(&mut self, table: NamedTable) {
        if self.primary_table.is_none() {
            self.primary_table = Some(self.tables.len());
        }
        self.tables.push(table);
    }

    pub fn mark_primary(&mut self) {
        if !self.tables.is_empty() {
            self.primary_table = Some(self.tables.len() - 1);
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let params = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={}", v.text()))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "{} {}", self.command, params);
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        if !self.scalars.is_empty() {
            let _ = writeln!(out);
            let width = self
                .scalars
                .iter()
                .map(|(name, _)| name.len())
                .max()
                .unwrap_or(0);
            for (name, value) in &self.scalars {
                let _ = writeln!(out, "{name:width$}  {}", value.text());
            }
        }
        for table in &self.tables {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}]", table.name);
            let mut widths: Vec<usize> = table.columns.iter().map(|c| c.len()).collect();
            let rendered: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|row| row.iter().map(|c| c.text()).collect())
                .collect();
            for row in &rendered {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let header = table
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<width$}", width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ");
            let _ = writeln!(out, "{}", header.trim_end());
            let rule = widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("  ");
            let _ = writeln!(out, "{rule}");
            for row in &rendered {
                let line = row
                    .iter()
                    .enumerate()
                    .map(|(i, cell)| format!("{cell:<width$}", width = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ");
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let Some(index) = self.primary_table else {
            return String::new();
        };
        let table = &self.tables[index];
        let mut out = String::new();
        let _ = writeln!(out, "{}", table.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        for row in &table.rows {
            let line = row
                .iter()
                .map(|c| csv_field(&c.text()))
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    fn render_json(&self) -> String {
        let mut root = serde_json::Map::new();
        root.insert("schema_version".into(), SCHEMA_VERSION.into());
        root.insert("command".into(), self.command.as_str().into());
        let params: serde_json::Map<String, serde_json::Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        root.insert("parameters".into(), params.into());
        root.insert(
            "generated_at".into(),
            chrono::Utc::now()
                .to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
                .into(),
        );
        root.insert("notes".into(), self.notes.clone().into());
        let summary: serde_json::Map<String, serde_json::Value> = self
            .scalars
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        root.insert("summary".into(), summary.into());
        let tables: Vec<serde_json::Value> = self
            .tables
            .iter()
            .map(|t| {
                serde_json::json!({
                    "name": t.name,
                    "columns": t.columns,
                    "rows": t.rows.iter().map(|row| {
                        row.iter().map(|c| c.json()).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        root.insert("tables".into(), tables.into());
        let mut text = serde_json::to_string_pretty(&serde_json::Value::from(root))
            .expect("report serializes");
        text.push('\n');
        text
    }
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}
