use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Output of one command: a table of decimal strings, an optional structured
/// JSON body that replaces the row objects, and the failed tolerance checks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Option<Value>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(header: &[&str]) -> Self {
        Report { header: header.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    /// Rows as JSON objects keyed by column name.
    pub fn row_objects(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for r in std::iter::once(&self.header).chain(&self.rows) {
                    w.write_record(r).expect("writing to memory");
                }
                String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 cells")
            }
            Format::Json => {
                let body = self.json.clone().unwrap_or_else(|| self.row_objects());
                let mut out = serde_json::to_string_pretty(&body).expect("string-valued JSON");
                out.push('\n');
                out
            }
            Format::Table => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.header);
                for r in &self.rows {
                    out.push_str(&line(r));
                }
                out
            }
        }
    }
}
