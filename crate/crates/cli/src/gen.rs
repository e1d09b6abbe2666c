//! `gen` subcommand: sequences and triangles as CSV or JSON.

use serde_json::{json, Value};
use trinomia::seqgen::{laurent_entry, motzkin_sequence, tbc_sequence, tbc_triangle, tnk_row};
use trinomia::{BiPoly, Rational, Ring};

use crate::suites::{Params, UsageError};
use crate::{Format, GenKind};

/// A value that can be written to a CSV cell and a JSON field.
trait Cell: Ring {
    fn json(&self) -> Value;

    fn csv(&self) -> String {
        csv_field(&self.to_string())
    }
}

impl Cell for Rational {
    fn json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Cell for BiPoly {
    fn json(&self) -> Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

impl Cell for trinomia::Integer {
    fn json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Quotes a CSV field when needed.
pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

enum Table<R> {
    /// Keyed by `n` or `k`.
    Keyed { key: &'static str, rows: Vec<(i64, R)> },
    /// Matrix rows of varying length.
    Rows(Vec<Vec<R>>),
}

fn render<R: Cell>(kind: &str, header: Value, table: Table<R>, format: Format) -> String {
    let mut out = String::new();
    match (format, table) {
        (Format::Csv, Table::Keyed { key, rows }) => {
            out.push_str(&format!("{key},value\n"));
            for (k, v) in rows {
                out.push_str(&format!("{k},{}\n", v.csv()));
            }
        }
        (Format::Csv, Table::Rows(rows)) => {
            for row in rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        (Format::Json, table) => {
            let body = match table {
                Table::Keyed { key, rows } => Value::Array(
                    rows.iter().map(|(k, v)| json!({ key: k, "value": v.json() })).collect(),
                ),
                Table::Rows(rows) => Value::Array(
                    rows.iter()
                        .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                        .collect(),
                ),
            };
            let mut doc = json!({ "kind": kind, "params": header });
            doc["data"] = body;
            out = serde_json::to_string_pretty(&doc).expect("json");
            out.push('\n');
        }
    }
    out
}

fn sequence_table<R: Cell>(
    what: GenKind,
    b: &R,
    c: &R,
    p: &Params,
) -> Result<Table<R>, UsageError> {
    Ok(match what {
        GenKind::Tbc => {
            let n = p.n.unwrap_or(10);
            Table::Keyed {
                key: "n",
                rows: tbc_sequence(b, c, n).into_iter().enumerate().map(|(i, v)| (i as i64, v)).collect(),
            }
        }
        GenKind::Motzkin => {
            let n = p.n.unwrap_or(10);
            Table::Keyed {
                key: "n",
                rows: motzkin_sequence(b, c, n).into_iter().enumerate().map(|(i, v)| (i as i64, v)).collect(),
            }
        }
        GenKind::Laurent => {
            let n = p.n.unwrap_or(4);
            let n_i = n as i64;
            Table::Keyed {
                key: "k",
                rows: (-n_i..=n_i).map(|k| (k, laurent_entry(n, k, b, c))).collect(),
            }
        }
        GenKind::Triangle => {
            let rows = p.rows.unwrap_or(6);
            if rows == 0 {
                return Err(UsageError("--rows must be positive".into()));
            }
            Table::Rows(tbc_triangle(b, c, rows - 1).rows().to_vec())
        }
        GenKind::Tnk => unreachable!("handled separately"),
    })
}

fn kind_name(what: GenKind) -> &'static str {
    match what {
        GenKind::Tnk => "tnk",
        GenKind::Tbc => "tbc",
        GenKind::Laurent => "laurent",
        GenKind::Motzkin => "motzkin",
        GenKind::Triangle => "triangle",
    }
}

pub(crate) fn generate(what: GenKind, p: &Params, format: Format) -> Result<String, UsageError> {
    let kind = kind_name(what);
    if what == GenKind::Tnk {
        let rows = p.rows.unwrap_or(6);
        if rows == 0 {
            return Err(UsageError("--rows must be positive".into()));
        }
        let table = Table::Rows((0..rows).map(tnk_row).collect());
        return Ok(render(kind, json!({ "rows": rows }), table, format));
    }
    if p.symbolic {
        if p.b.is_some() || p.c.is_some() {
            return Err(UsageError("--symbolic conflicts with --b/--c".into()));
        }
        let table = sequence_table(what, &BiPoly::b(), &BiPoly::c(), p)?;
        let header = json!({ "b": "b", "c": "c", "n": p.n, "rows": p.rows });
        return Ok(render(kind, header, table, format));
    }
    let one = Rational::from_i64(1);
    let b = p.b.clone().unwrap_or_else(|| one.clone());
    let c = p.c.clone().unwrap_or(one);
    let header = json!({ "b": b.to_string(), "c": c.to_string(), "n": p.n, "rows": p.rows });
    let table = sequence_table(what, &b, &c, p)?;
    Ok(render(kind, header, table, format))
}
