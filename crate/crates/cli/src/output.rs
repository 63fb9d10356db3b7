//! CSV and JSON rendering. Both embed the run configuration and engine
//! version; floats are written with 17 significant digits.

use serde_json::{Map, Value};
use tree_energy_core::ENGINE_VERSION;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
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
        Cell::Text(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Null => Value::Null,
        }
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Rows with a fixed header and an optional list of summary facts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn summary_value(&self, key: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn render(&self, config: &RunConfig, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(config),
            Format::Json => self.to_json(config),
        }
    }

    pub fn to_csv(&self, config: &RunConfig) -> Result<String> {
        let mut out = preamble(config)?;
        for (k, v) in &self.summary {
            out.push_str(&format!("# summary {k}={}\n", v.to_csv()));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv)).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        out.push_str(std::str::from_utf8(&bytes).expect("csv output is UTF-8"));
        Ok(out)
    }

    pub fn to_json(&self, config: &RunConfig) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| ((*c).to_owned(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        let mut top = Map::new();
        top.insert("config".into(), config_value(config)?);
        top.insert("engine_version".into(), ENGINE_VERSION.into());
        top.insert("rows".into(), Value::Array(rows));
        if !self.summary.is_empty() {
            let summary: Map<String, Value> = self
                .summary
                .iter()
                .map(|(k, v)| ((*k).to_owned(), v.to_json()))
                .collect();
            top.insert("summary".into(), Value::Object(summary));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top))
            .map_err(|e| CliError::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

fn config_value(config: &RunConfig) -> Result<Value> {
    serde_json::to_value(config).map_err(|e| CliError::Output(e.to_string()))
}

/// `#` comment lines carrying the engine version and the configuration.
pub fn preamble(config: &RunConfig) -> Result<String> {
    let json = serde_json::to_string(&config_value(config)?).map_err(|e| CliError::Output(e.to_string()))?;
    Ok(format!("# engine_version={ENGINE_VERSION}\n# config={json}\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig {
            command: "test".into(),
            params: Map::new(),
            format: Format::Csv,
            dense_cap: 10,
            polynomial_cap: 5,
            eps: 1e-8,
            eigen_tolerance: 1e-10,
            root_tolerance: 1e-12,
            zero_clamp: 1e-10,
            workers: 1,
        }
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_float(2.0 * 3f64.sqrt()), "3.4641016151377544e0");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["n", "energy", "label"]);
        t.push(vec![4usize.into(), 2.0.into(), "a,b".into()]);
        t.note("ok", true);
        let s = t.to_csv(&config()).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert!(lines[0].starts_with("# engine_version="));
        assert!(lines[1].starts_with("# config={\"command\":\"test\""));
        assert_eq!(lines[2], "# summary ok=true");
        assert_eq!(lines[3], "n,energy,label");
        assert_eq!(lines[4], "4,2.0000000000000000e0,\"a,b\"");
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(&["x"]);
        t.push(vec![Cell::Float(f64::NAN)]);
        let v: Value = serde_json::from_str(&t.to_json(&config()).unwrap()).unwrap();
        assert_eq!(v["engine_version"], ENGINE_VERSION);
        assert_eq!(v["config"]["dense_cap"], 10);
        assert!(v["rows"][0]["x"].is_null());
        assert!(v.get("summary").is_none());
    }
}
