use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// One table cell. Integers too large for 64 bits are carried as decimal strings.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Big(String),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.12}"),
            Cell::Big(v) | Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::UInt(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Big(v) | Cell::Text(v) => json!(v),
            Cell::Bool(v) => json!(v),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::UInt(v as u64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Text(String::new()), Into::into)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
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
}

/// Named pass/fail checks; the verdict passes iff all of them do.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Verdict {
    pub checks: Vec<(String, bool)>,
}

impl Verdict {
    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: String,
    /// Extra `key=value` pairs emitted after the parameters.
    pub notes: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub verdict: Option<Verdict>,
}

impl Report {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            notes: Vec::new(),
            tables: Vec::new(),
            verdict: None,
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn passed(&self) -> bool {
        self.verdict.as_ref().is_none_or(Verdict::pass)
    }

    fn metadata(
        &self,
        params: &[(String, String)],
        timestamp: Option<u64>,
    ) -> Vec<(String, String)> {
        let mut meta = vec![
            ("experiment".to_string(), self.experiment.clone()),
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ];
        meta.extend(params.iter().cloned());
        meta.extend(self.notes.iter().cloned());
        if let Some(t) = timestamp {
            meta.push(("timestamp".to_string(), t.to_string()));
        }
        meta
    }

    pub fn to_csv(&self, params: &[(String, String)], timestamp: Option<u64>) -> String {
        let mut out = String::from("#");
        for (k, v) in self.metadata(params, timestamp) {
            let v = if v.contains(char::is_whitespace) {
                format!("\"{v}\"")
            } else {
                v
            };
            write!(out, " {k}={v}").unwrap();
        }
        out.push('\n');
        for table in self.all_tables() {
            writeln!(out, "# table={}", table.name).unwrap();
            writeln!(out, "{}", table.columns.join(",")).unwrap();
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        if let Some(v) = &self.verdict {
            writeln!(out, "# verdict={}", if v.pass() { "PASS" } else { "FAIL" }).unwrap();
        }
        out
    }

    pub fn to_json(&self, params: &[(String, String)], timestamp: Option<u64>) -> String {
        let metadata: Map<String, Value> = self
            .metadata(params, timestamp)
            .into_iter()
            .map(|(k, v)| (k, Value::String(v)))
            .collect();
        let tables: Vec<Value> = self
            .all_tables()
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "columns": t.columns,
                    "rows": t.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut doc = json!({ "metadata": metadata, "tables": tables });
        if let Some(v) = &self.verdict {
            doc["verdict"] = json!(if v.pass() { "PASS" } else { "FAIL" });
        }
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// Data tables followed by the verdict's checks, if any.
    fn all_tables(&self) -> Vec<Table> {
        let mut tables = self.tables.clone();
        if let Some(v) = &self.verdict {
            let mut checks = Table::new("checks", &["check", "pass"]);
            for (name, ok) in &v.checks {
                checks.push(vec![name.as_str().into(), (*ok).into()]);
            }
            tables.push(checks);
        }
        tables
    }
}
