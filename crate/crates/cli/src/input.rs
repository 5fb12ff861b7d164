//! CSV ingestion.
//!
//! The first row is a header iff one of its selected cells does not parse as
//! a number, or a column was selected by a name found in it.

use std::io::Read;
use std::str::FromStr;

use dualfit::Dataset;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("ParseError: line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("InvalidInput: {0}")]
    Invalid(String),
    #[error("IoError: {0}")]
    Io(String),
}

/// A column picked by zero-based index or by header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSpec {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnSpec {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().parse::<usize>() {
            Ok(i) => ColumnSpec::Index(i),
            Err(_) => ColumnSpec::Name(s.trim().to_string()),
        })
    }
}

/// Column to use when none was given: a header cell with this name if there
/// is one, otherwise this index.
#[derive(Debug, Clone, Copy)]
pub struct DefaultColumn {
    pub name: &'static str,
    pub index: usize,
}

pub const DEFAULT_X: DefaultColumn = DefaultColumn {
    name: "x",
    index: 0,
};
pub const DEFAULT_Y: DefaultColumn = DefaultColumn {
    name: "y",
    index: 1,
};

struct Resolved {
    index: usize,
    by_name: bool,
}

fn resolve(
    spec: Option<&ColumnSpec>,
    fallback: DefaultColumn,
    first: &csv::StringRecord,
) -> Result<Resolved, InputError> {
    let find = |name: &str| first.iter().position(|cell| cell == name);
    match spec {
        Some(ColumnSpec::Index(index)) => Ok(Resolved {
            index: *index,
            by_name: false,
        }),
        Some(ColumnSpec::Name(name)) => find(name)
            .map(|index| Resolved {
                index,
                by_name: true,
            })
            .ok_or_else(|| InputError::Invalid(format!("column '{name}' not found in header"))),
        None => Ok(match find(fallback.name) {
            Some(index) => Resolved {
                index,
                by_name: true,
            },
            None => Resolved {
                index: fallback.index,
                by_name: false,
            },
        }),
    }
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn cell(record: &csv::StringRecord, index: usize, axis: &str) -> Result<f64, InputError> {
    let raw = record.get(index).ok_or_else(|| InputError::Parse {
        line: line_of(record),
        message: format!(
            "row has {} fields, no column {index} for {axis}",
            record.len()
        ),
    })?;
    raw.parse::<f64>().map_err(|_| InputError::Parse {
        line: line_of(record),
        message: format!("cannot parse '{raw}' as a number for {axis}"),
    })
}

/// Reads `(x, y)` pairs in file order, skipping blank lines.
pub fn parse_csv<R: Read>(
    source: R,
    x_column: Option<&ColumnSpec>,
    y_column: Option<&ColumnSpec>,
) -> Result<Dataset, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let mut records = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| match e.position() {
            Some(p) => InputError::Parse {
                line: p.line(),
                message: e.to_string(),
            },
            None => InputError::Io(e.to_string()),
        })?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        records.push(record);
    }
    let Some(first) = records.first() else {
        return Err(InputError::Invalid("input contains no rows".into()));
    };

    let x = resolve(x_column, DEFAULT_X, first)?;
    let y = resolve(y_column, DEFAULT_Y, first)?;
    for col in [&x, &y] {
        if col.index >= first.len() {
            return Err(InputError::Invalid(format!(
                "column {} is missing: the first row has {} fields",
                col.index,
                first.len()
            )));
        }
    }
    let numeric = |i: usize| first.get(i).is_some_and(|c| c.parse::<f64>().is_ok());
    let has_header = x.by_name || y.by_name || !numeric(x.index) || !numeric(y.index);

    let rows = if has_header {
        &records[1..]
    } else {
        &records[..]
    };
    let points = rows
        .iter()
        .map(|r| Ok((cell(r, x.index, "x")?, cell(r, y.index, "y")?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    if points.len() < 2 {
        return Err(InputError::Invalid(format!(
            "need at least 2 data rows, got {}",
            points.len()
        )));
    }
    Dataset::new(points).map_err(|e| InputError::Invalid(e.to_string()))
}
