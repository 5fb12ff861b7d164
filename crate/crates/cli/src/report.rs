//! Ordered key/value records and their json, csv and table renderings.

use serde_json::{Map, Value};

use crate::output::{fmt_num, json_num, table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Count(usize),
    Flag(bool),
    Nums(Vec<f64>),
    MaybeNum(Option<f64>),
}

impl Field {
    fn text(&self, list_sep: &str, none: &str) -> String {
        match self {
            Field::Num(x) => fmt_num(*x),
            Field::Count(n) => n.to_string(),
            Field::Flag(b) => b.to_string(),
            Field::Nums(xs) => xs
                .iter()
                .map(|x| fmt_num(*x))
                .collect::<Vec<_>>()
                .join(list_sep),
            Field::MaybeNum(x) => x.map_or_else(|| none.to_string(), fmt_num),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(x) => json_num(*x),
            Field::Count(n) => Value::from(*n),
            Field::Flag(b) => Value::Bool(*b),
            Field::Nums(xs) => Value::Array(xs.iter().map(|x| json_num(*x)).collect()),
            Field::MaybeNum(x) => x.map_or(Value::Null, json_num),
        }
    }
}

pub type Record = Vec<(&'static str, Field)>;

fn json_object(record: &Record) -> Value {
    let mut map = Map::new();
    for (key, field) in record {
        map.insert((*key).to_string(), field.json());
    }
    Value::Object(map)
}

fn csv_line(cells: impl Iterator<Item = String>) -> String {
    let mut line = cells.collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// One record: a two-column table, a json object, or a csv header plus row.
pub fn render_record(record: &Record, format: Format) -> String {
    match format {
        Format::Json => pretty(&json_object(record)),
        Format::Csv => {
            let header = csv_line(record.iter().map(|(k, _)| (*k).to_string()));
            header + &csv_line(record.iter().map(|(_, f)| f.text(";", "")))
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = record
                .iter()
                .map(|(k, f)| vec![(*k).to_string(), f.text(" ", "none")])
                .collect();
            table(&rows)
        }
    }
}

/// Several records sharing keys: a table with a header, a json array, or csv.
pub fn render_records(records: &[Record], format: Format) -> String {
    let keys: Vec<String> = records
        .first()
        .map(|r| r.iter().map(|(k, _)| (*k).to_string()).collect())
        .unwrap_or_default();
    match format {
        Format::Json => pretty(&Value::Array(records.iter().map(json_object).collect())),
        Format::Csv => {
            let mut out = csv_line(keys.into_iter());
            for r in records {
                out.push_str(&csv_line(r.iter().map(|(_, f)| f.text(";", ""))));
            }
            out
        }
        Format::Table => {
            let mut rows = vec![keys];
            rows.extend(
                records
                    .iter()
                    .map(|r| r.iter().map(|(_, f)| f.text(" ", "none")).collect()),
            );
            table(&rows)
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}
