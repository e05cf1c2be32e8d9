use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// A command result in both renderings. `ok` is false when a check failed.
pub struct Output {
    pub json: Value,
    pub table: String,
    pub ok: bool,
}

impl Output {
    pub fn new(json: Value, table: impl Into<String>) -> Self {
        Output { json, table: table.into(), ok: true }
    }

    /// Values whose table form is their compact JSON.
    pub fn json(json: Value) -> Self {
        let table = json.to_string();
        Output { json, table, ok: true }
    }

    pub fn text(s: impl Into<String>) -> Self {
        let s = s.into();
        Output { json: Value::String(s.clone()), table: s, ok: true }
    }

    pub fn lines<I: IntoIterator<Item = String>>(items: I) -> Self {
        let items: Vec<String> = items.into_iter().collect();
        let table = items.join("\n");
        Output { json: Value::from(items), table, ok: true }
    }

    pub fn failed(mut self) -> Self {
        self.ok = false;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.to_string(),
            Format::Table => self.table.clone(),
        }
    }
}

pub enum CliError {
    Input(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn input_error<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}
