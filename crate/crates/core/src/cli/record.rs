//! Flat output records and their JSON, CSV and text renderings.

use indexmap::{IndexMap, IndexSet};
use serde_json::{Number, Value};

use crate::bounds::{BoundInput, BoundResult};
use crate::complexity::ComplexitySpec;

/// One flat row of output: parameter names to scalar values, in insertion
/// order.
pub type OutputRecord = IndexMap<String, Value>;

/// Finite floats become JSON numbers; non-finite ones become `null`.
pub fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Inserts `value` under `key`, or under `term_<key>` when `key` is taken
/// by a different value.
pub fn insert_term(rec: &mut OutputRecord, key: &str, value: f64) {
    let key = match rec.get(key) {
        None => key.to_owned(),
        Some(existing) if existing.as_f64() == Some(value) => return,
        Some(_) => format!("term_{key}"),
    };
    rec.insert(key, num(value));
}

/// Inputs, verdict and intermediate terms of one bound evaluation.
pub fn bound_record(input: &BoundInput, res: &BoundResult) -> OutputRecord {
    let mut rec = OutputRecord::new();
    rec.insert("theorem".into(), Value::from(res.theorem.tag()));
    rec.insert("N".into(), Value::from(input.n));
    rec.insert("k".into(), Value::from(input.k));
    rec.insert("epsilon".into(), num(input.epsilon));
    rec.insert("r1".into(), num(input.r1));
    let (kind, value) = match input.complexity {
        ComplexitySpec::VcDim(h) => ("vc_dim", Value::from(h)),
        ComplexitySpec::LogClassSize(l) => ("log_class_size", num(l)),
        ComplexitySpec::ExplicitD(d) => ("explicit_d", num(d)),
    };
    rec.insert("complexity".into(), Value::from(kind));
    rec.insert("complexity_value".into(), value);
    rec.insert("value".into(), num(res.value));
    rec.insert("significant".into(), Value::from(res.significant));
    rec.insert("valid".into(), Value::from(res.valid));
    rec.insert("confidence".into(), num(res.confidence));
    rec.insert("r1_off_grid".into(), Value::from(res.r1_off_grid));
    for (name, v) in &res.terms {
        insert_term(&mut rec, name, *v);
    }
    rec
}

/// `[15, 16, 17, 18, 20]` as `"15-18,20"`.
pub fn compress_ranges(values: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let start = values[i];
        let mut end = start;
        while i + 1 < values.len() && values[i + 1] == end + 1 {
            i += 1;
            end = values[i];
        }
        parts.push(if start == end {
            start.to_string()
        } else {
            format!("{start}-{end}")
        });
        i += 1;
    }
    parts.join(",")
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records are serialisable");
    s.push('\n');
    s
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// RFC-4180 table with a header row; the columns are the union of the
/// records' keys in first-seen order, missing cells left empty.
pub fn to_csv(records: &[OutputRecord]) -> String {
    let columns: IndexSet<&String> = records.iter().flat_map(|r| r.keys()).collect();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(columns.iter().map(|c| c.as_str()))
        .expect("in-memory write");
    for r in records {
        w.write_record(
            columns
                .iter()
                .map(|c| r.get(*c).map(csv_cell).unwrap_or_default()),
        )
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn text_cell(key: &str, v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            match key {
                // an upper bound stays an upper bound once printed
                "value" => format!("{:.4}", (x * 1e4).ceil() / 1e4),
                // reference checks quote up to five decimals
                "computed" => format!("{x:.6}"),
                _ => format!("{x:.4}"),
            }
        }
        other => csv_cell(other),
    }
}

/// `key: value` lines, floats at four decimals.
pub fn to_text(rec: &OutputRecord) -> String {
    let width = rec.keys().map(String::len).max().unwrap_or(0);
    rec.iter()
        .map(|(k, v)| format!("{k:<width$}  {}\n", text_cell(k, v)))
        .collect()
}

/// Aligned table, floats at four decimals.
pub fn to_text_table(records: &[OutputRecord]) -> String {
    let columns: Vec<&String> = records
        .iter()
        .flat_map(|r| r.keys())
        .collect::<IndexSet<_>>()
        .into_iter()
        .collect();
    let cells: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|c| r.get(*c).map(|v| text_cell(c, v)).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|row| row[i].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: Vec<&str>| {
        let mut s = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(columns.iter().map(|c| c.as_str()).collect());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
