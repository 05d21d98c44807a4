//! Triangle files (JSON and CSV) and the centered text rendering.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::triangle::Triangle;

/// On-disk triangle: entries are decimal strings so values of any size
/// survive any JSON consumer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFile {
    pub name: String,
    pub rows: Vec<Vec<String>>,
}

impl TriangleFile {
    pub fn from_triangle<T: Scalar>(t: &Triangle<T>) -> Self {
        Self {
            name: t.name().to_string(),
            rows: t
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn to_triangle<T: Scalar>(&self) -> Result<Triangle<T>> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, s)| {
                        s.trim().parse::<T>().map_err(|_| {
                            Error::Parse(format!("entry ({n},{k}) is not an integer: {s:?}"))
                        })
                    })
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("triangle file has no rows".into()));
        }
        Triangle::from_rows(self.name.clone(), rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn to_json<T: Scalar>(t: &Triangle<T>) -> String {
    let mut s = serde_json::to_string_pretty(&TriangleFile::from_triangle(t))
        .expect("triangle file serializes");
    s.push('\n');
    s
}

/// One row per line, comma-separated.
pub fn to_csv<T: Scalar>(t: &Triangle<T>) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .has_headers(false)
        .from_writer(Vec::new());
    for row in t.rows() {
        w.write_record(row.iter().map(ToString::to_string))
            .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn write<T: Scalar>(t: &Triangle<T>, format: Format) -> String {
    match format {
        Format::Json => to_json(t),
        Format::Csv => to_csv(t),
    }
}

/// Reads JSON (text starting with `{`) or CSV. CSV carries no name, so
/// `csv_name` is used.
pub fn read<T: Scalar>(text: &str, csv_name: &str) -> Result<Triangle<T>> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::Parse("input is empty".into()));
    }
    if trimmed.starts_with('{') {
        let file: TriangleFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
        return file.to_triangle();
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    TriangleFile {
        name: csv_name.to_string(),
        rows,
    }
    .to_triangle()
}

/// Centered fixed-width layout: each entry left-aligned in a cell as wide as
/// the widest entry (or `min_width`), cells separated by one space, trailing
/// spaces trimmed.
pub fn render<T: Scalar>(t: &Triangle<T>, min_width: usize) -> String {
    let texts: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = texts
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(min_width);
    let last = texts.len() - 1;
    let mut out = String::new();
    for (n, row) in texts.iter().enumerate() {
        let indent = (last - n) * (width + 1) / 2;
        let mut line = " ".repeat(indent);
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{v:<width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
