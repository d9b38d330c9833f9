use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{usage, CliResult};

/// Resolved experiment parameters: config-file entries overridden by command-line flags.
///
/// Every value an experiment reads, including defaults, is recorded in read order so it
/// can be echoed into the output metadata.
#[derive(Debug, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
    used: Vec<(String, String)>,
}

impl Params {
    pub fn new(file_entries: Vec<(String, String)>, flags: Vec<(String, String)>) -> Self {
        let mut values = BTreeMap::new();
        values.extend(file_entries);
        values.extend(flags);
        Self {
            values,
            used: Vec::new(),
        }
    }

    /// Parses a `key = value` file. Blank lines and `#` comments are skipped; keys may
    /// use `-` or `_`.
    pub fn read_config(path: &Path) -> CliResult<Vec<(String, String)>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_config(&text)
    }

    fn record(&mut self, key: &str, value: String) {
        if !self.used.iter().any(|(k, _)| k == key) {
            self.used.push((key.to_string(), value));
        }
    }

    pub fn get_opt<T: FromStr>(&mut self, key: &str) -> CliResult<Option<T>> {
        let Some(raw) = self.values.get(key).cloned() else {
            return Ok(None);
        };
        let value = raw
            .parse()
            .map_err(|_| usage(format!("invalid value '{raw}' for {key}")))?;
        self.record(key, raw);
        Ok(Some(value))
    }

    pub fn get<T: FromStr + ToString>(&mut self, key: &str, default: T) -> CliResult<T> {
        match self.get_opt(key)? {
            Some(v) => Ok(v),
            None => {
                self.record(key, default.to_string());
                Ok(default)
            }
        }
    }

    pub fn get_str(&mut self, key: &str, default: &str) -> String {
        let value = self
            .values
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string());
        self.record(key, value.clone());
        value
    }

    pub fn echoed(&self) -> &[(String, String)] {
        &self.used
    }
}

pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", lineno + 1)))?;
        out.push((k.trim().replace('-', "_"), v.trim().to_string()));
    }
    Ok(out)
}
