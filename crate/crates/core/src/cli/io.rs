//! Dataset ingestion (CSV or JSON) and number formatting.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::data::HermiteData;
use crate::estimate::arithmetic_mean_derivatives;

/// Significant digits of every number written by the CLI.
pub const SIG_DIGITS: usize = 12;

/// Input or content error; the flag separates unreadable files (exit 4)
/// from malformed content (exit 2).
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub message: String,
    pub io: bool,
}

impl InputError {
    fn content(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            io: false,
        }
    }
}

/// Knots, values and optional slopes as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub d: Option<Vec<f64>>,
}

impl Dataset {
    /// Hermite data, estimating slopes when the file had none. The flag
    /// reports whether they were estimated.
    pub fn to_hermite(&self) -> crate::Result<(HermiteData, bool)> {
        match &self.d {
            Some(d) => Ok((HermiteData::new(self.x.clone(), self.y.clone(), d.clone())?, false)),
            None => {
                let d = arithmetic_mean_derivatives(&self.x, &self.y)?;
                Ok((HermiteData::new(self.x.clone(), self.y.clone(), d)?, true))
            }
        }
    }
}

/// `v` rounded to 12 significant digits, fixed notation for moderate
/// magnitudes, scientific otherwise.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // Rounding can carry into a new digit (9.99.. -> 10.0); redo then.
        let digits = s.trim_start_matches('-').split('.').next().unwrap_or("").len() as i32;
        let s = if exp >= 0 && digits > exp + 1 && decimals > 0 {
            format!("{v:.prec$}", prec = decimals - 1)
        } else {
            s
        };
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, v);
        let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exponent}")
    }
}

pub fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(", ")
}

fn read_text(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError {
        message: format!("cannot read {}: {e}", path.display()),
        io: true,
    })
}

/// A numeric table read from CSV: lower-cased header names and rows, each
/// with its line number.
struct Table {
    headers: Vec<String>,
    rows: Vec<(u64, Vec<f64>)>,
}

impl Table {
    fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }
}

fn read_csv_table(text: &str) -> Result<Table, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| InputError::content(format!("bad header: {e}")))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    if headers.iter().all(|h| h.parse::<f64>().is_ok()) {
        return Err(InputError::content(
            "missing header row (expected column names such as x,y,d)",
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            InputError::content(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let values = record
            .iter()
            .zip(&headers)
            .map(|(field, name)| {
                field.parse::<f64>().map_err(|_| {
                    InputError::content(format!("line {line}: field {name} = '{field}' is not a number"))
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push((line, values));
    }
    Ok(Table { headers, rows })
}

#[derive(Deserialize)]
struct JsonRecord {
    x: f64,
    y: f64,
    d: Option<f64>,
}

fn looks_like_json(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('[')
}

/// Reads `x,y[,d]` records from CSV (header required, `#` comments) or a
/// JSON array of `{x, y, d?}` objects. Rows must have strictly increasing
/// `x`; the offending row is named otherwise.
pub fn parse_dataset(path: &Path) -> Result<Dataset, InputError> {
    let text = read_text(path)?;
    parse_dataset_str(&text, looks_like_json(path, &text))
}

pub fn parse_dataset_str(text: &str, json: bool) -> Result<Dataset, InputError> {
    // (row label, x, y, d)
    let mut rows: Vec<(String, f64, f64, Option<f64>)> = Vec::new();
    if json {
        let recs: Vec<JsonRecord> = serde_json::from_str(text)
            .map_err(|e| InputError::content(format!("bad JSON dataset: {e}")))?;
        for (k, r) in recs.into_iter().enumerate() {
            rows.push((format!("record {}", k + 1), r.x, r.y, r.d));
        }
    } else {
        let table = read_csv_table(text)?;
        let (cx, cy) = match (table.column("x"), table.column("y")) {
            (Some(cx), Some(cy)) => (cx, cy),
            _ => {
                return Err(InputError::content(format!(
                    "header must name columns x and y, got {}",
                    table.headers.join(",")
                )))
            }
        };
        let cd = table.column("d");
        for (line, v) in &table.rows {
            rows.push((format!("line {line}"), v[cx], v[cy], cd.map(|c| v[c])));
        }
    }

    if rows.is_empty() {
        return Err(InputError::content("dataset has no rows"));
    }
    let with_d = rows.iter().filter(|r| r.3.is_some()).count();
    if with_d != 0 && with_d != rows.len() {
        return Err(InputError::content("either every row or no row must carry d"));
    }
    for (k, r) in rows.iter().enumerate() {
        for (name, v) in [("x", Some(r.1)), ("y", Some(r.2)), ("d", r.3)] {
            if v.is_some_and(|v| !v.is_finite()) {
                return Err(InputError::content(format!("{}: {name} is not finite", r.0)));
            }
        }
        if k > 0 {
            let prev = &rows[k - 1];
            if r.1 == prev.1 {
                return Err(InputError::content(format!(
                    "{}: duplicate x = {} (also on {})",
                    r.0,
                    fmt_num(r.1),
                    prev.0
                )));
            }
            if r.1 < prev.1 {
                return Err(InputError::content(format!(
                    "{}: x = {} is not above the previous x = {}",
                    r.0,
                    fmt_num(r.1),
                    fmt_num(prev.1)
                )));
            }
        }
    }
    Ok(Dataset {
        x: rows.iter().map(|r| r.1).collect(),
        y: rows.iter().map(|r| r.2).collect(),
        d: (with_d > 0).then(|| rows.iter().map(|r| r.3.unwrap_or(0.0)).collect()),
    })
}

/// Reads the `x` and `s` columns of a CSV written by `sample`.
pub fn parse_sample(path: &Path) -> Result<(Vec<f64>, Vec<f64>), InputError> {
    let text = read_text(path)?;
    let table = read_csv_table(&text)?;
    let (cx, cs) = match (table.column("x"), table.column("s")) {
        (Some(cx), Some(cs)) => (cx, cs),
        _ => return Err(InputError::content("sample file needs columns x and S")),
    };
    Ok((
        table.rows.iter().map(|r| r.1[cx]).collect(),
        table.rows.iter().map(|r| r.1[cs]).collect(),
    ))
}
