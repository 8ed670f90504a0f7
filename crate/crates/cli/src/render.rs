use std::io::Write;
use std::path::Path;

use anyhow::{bail, Result};
use clap::ValueEnum;
use serde_json::Value;

use hwpkit::io::{write_table_csv, MatrixFile, TableRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub enum Output {
    Matrix(MatrixFile),
    Json(Value),
    Table(Vec<TableRow>),
    Records(Vec<Value>),
}

fn round_to(x: f64, places: u32) -> f64 {
    let s = 10f64.powi(places as i32);
    let r = (x * s).round() / s;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_json(v: &Value, places: u32) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .map(|x| Value::from(round_to(x, places)))
            .unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.iter().map(|x| round_json(x, places)).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), round_json(x, places))).collect()),
        other => other.clone(),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Output {
    fn rounded(&self, places: u32) -> Output {
        match self {
            Output::Matrix(m) => Output::Matrix(MatrixFile {
                d: m.d,
                rows: m
                    .rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|[a, b]| [round_to(*a, places), round_to(*b, places)])
                            .collect()
                    })
                    .collect(),
            }),
            Output::Json(v) => Output::Json(round_json(v, places)),
            Output::Table(rows) => Output::Table(rows.iter().map(|r| r.rounded(places)).collect()),
            Output::Records(rs) => Output::Records(rs.iter().map(|r| round_json(r, places)).collect()),
        }
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        let mut buf = vec![];
        match (self, format) {
            (Output::Matrix(m), Format::Json) => serde_json::to_writer_pretty(&mut buf, m)?,
            (Output::Json(v), Format::Json) => serde_json::to_writer_pretty(&mut buf, v)?,
            (Output::Table(rows), Format::Json) => serde_json::to_writer_pretty(&mut buf, rows)?,
            (Output::Records(rs), Format::Json) => serde_json::to_writer_pretty(&mut buf, rs)?,
            (Output::Table(rows), Format::Csv) => write_table_csv(&mut buf, rows)?,
            (Output::Matrix(m), Format::Csv) => {
                for row in &m.rows {
                    let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re}{im:+}i")).collect();
                    writeln!(buf, "{}", cells.join(","))?;
                }
            }
            (Output::Records(rs), Format::Csv) => {
                if let Some(Value::Object(first)) = rs.first() {
                    let keys: Vec<&String> = first.keys().collect();
                    writeln!(buf, "{}", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","))?;
                    for r in rs {
                        let cells: Vec<String> = keys.iter().map(|k| cell(&r[k.as_str()])).collect();
                        writeln!(buf, "{}", cells.join(","))?;
                    }
                }
            }
            (Output::Json(_), Format::Csv) => bail!("this command only supports --format json"),
        }
        if format == Format::Json {
            buf.push(b'\n');
        }
        Ok(buf)
    }

    /// Files always get full precision; `round` only affects stdout.
    pub fn emit(&self, format: Format, round: Option<u32>, out: Option<&Path>) -> Result<()> {
        match out {
            Some(path) => {
                std::fs::write(path, self.render(format)?)?;
            }
            None => {
                let text = match round {
                    Some(p) => self.rounded(p).render(format)?,
                    None => self.render(format)?,
                };
                std::io::stdout().lock().write_all(&text)?;
            }
        }
        Ok(())
    }
}
