//! Plain-text file formats.
//!
//! Every file is UTF-8 comma-separated text. Lines starting with `#` carry
//! header metadata (`# key=value`) or comments; the first other line names
//! the columns. Numbers are written with a `.` decimal point regardless of
//! locale: dB values with two decimals, linear amplitudes with nine
//! significant digits.

mod catalog_file;
mod cir_file;
mod reports;

pub use catalog_file::{
    read_catalog_csv, read_ground_polarization_csv, write_catalog_csv, write_ground_polarization_csv,
    CATALOG_COLUMNS, GROUND_POLARIZATION_COLUMNS,
};
pub use cir_file::{read_cir_file, write_cir_file, CirFile, CirHeader, FORMAT_VERSION};
pub use reports::{write_clusters_csv, write_pdp_csv, write_stats_csv, write_sweep_csv, StatsRow, SweepRow};

use std::io::BufRead;
use std::str::FromStr;

use crate::{Error, Result};

/// Linear value with nine significant digits.
pub(crate) fn fmt_linear(v: f64) -> String {
    format!("{v:.8e}")
}

/// dB value with two decimals; values that round to zero print unsigned.
pub(crate) fn fmt_db(v: f64) -> String {
    if (v * 100.0).round() == 0.0 {
        return "0.00".to_string();
    }
    format!("{v:.2}")
}

pub(crate) fn fmt_opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

/// One data line split into fields, remembering where each field starts.
pub(crate) struct Record<'a> {
    pub line: usize,
    fields: Vec<(usize, &'a str)>,
}

impl<'a> Record<'a> {
    pub fn new(line: usize, text: &'a str) -> Self {
        let mut fields = Vec::new();
        let mut start = 0;
        for part in text.split(',') {
            fields.push((start + 1, part));
            start += part.len() + 1;
        }
        Self { line, fields }
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.fields.len() == n {
            Ok(())
        } else {
            Err(Error::parse(
                self.line,
                1,
                format!("expected {n} fields, found {}", self.fields.len()),
            ))
        }
    }

    pub fn str(&self, i: usize) -> Result<&'a str> {
        self.fields
            .get(i)
            .map(|f| f.1.trim())
            .ok_or_else(|| Error::parse(self.line, 1, format!("missing field {}", i + 1)))
    }

    pub fn column(&self, i: usize) -> usize {
        self.fields.get(i).map(|f| f.0).unwrap_or(1)
    }

    pub fn parse<T: FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let s = self.str(i)?;
        s.parse()
            .map_err(|_| Error::parse(self.line, self.column(i), format!("invalid {what} '{s}'")))
    }

    pub fn parse_opt<T: FromStr>(&self, i: usize, what: &str) -> Result<Option<T>> {
        if self.str(i)?.is_empty() {
            Ok(None)
        } else {
            self.parse(i, what).map(Some)
        }
    }

    /// Parses with a fallible constructor, attributing its error to field `i`.
    pub fn parse_with<T>(&self, i: usize, f: impl FnOnce(&str) -> Result<T>) -> Result<T> {
        let s = self.str(i)?;
        f(s).map_err(|e| Error::parse(self.line, self.column(i), e.to_string()))
    }

    pub fn error(&self, i: usize, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column(i), message)
    }
}

/// Header metadata, column names and data lines of a delimited file.
pub(crate) struct Document {
    pub meta: Vec<(usize, String, String)>,
    pub columns_line: usize,
    pub columns: Vec<String>,
    pub rows: Vec<(usize, String)>,
}

impl Document {
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut meta = Vec::new();
        let mut columns = None;
        let mut rows = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let n = i + 1;
            let text = line.trim_end_matches('\r');
            if let Some(comment) = text.strip_prefix('#') {
                if let Some((k, v)) = comment.split_once('=') {
                    meta.push((n, k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            if text.trim().is_empty() {
                continue;
            }
            if columns.is_none() {
                columns = Some((n, text.split(',').map(|c| c.trim().to_string()).collect()));
            } else {
                rows.push((n, text.to_string()));
            }
        }
        let (columns_line, columns) = columns.ok_or_else(|| Error::parse(1, 1, "missing column header line"))?;
        Ok(Self {
            meta,
            columns_line,
            columns,
            rows,
        })
    }

    pub fn expect_columns(&self, expected: &[&str]) -> Result<()> {
        if self.columns.iter().map(String::as_str).eq(expected.iter().copied()) {
            Ok(())
        } else {
            Err(Error::parse(
                self.columns_line,
                1,
                format!("expected columns '{}'", expected.join(",")),
            ))
        }
    }

    pub fn meta(&self, key: &str) -> Option<(usize, &str)> {
        self.meta
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(line, _, v)| (*line, v.as_str()))
    }
}
