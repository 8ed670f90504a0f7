//! Matrix JSON and table CSV formats.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::BargmannTable;
use crate::grid::{points, slot, PointLabel};
use crate::operators::{Ket, Operator};
use crate::ring::Dim;
use crate::wigner::WWTable;

/// `{ "d": int, "rows": [[[re, im], …], …] }`, row-major in centered order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub d: u32,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_operator(m: &Operator) -> Self {
        let rows = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
            .collect();
        Self {
            d: m.nrows() as u32,
            rows,
        }
    }

    pub fn to_operator(&self) -> Result<Operator> {
        let d = Dim::new(self.d)?.size();
        if self.rows.len() != d {
            return Err(Error::Parse(format!("expected {d} rows, found {}", self.rows.len())));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Parse(format!(
                    "row {i}: expected {d} entries, found {}",
                    row.len()
                )));
            }
        }
        Ok(Operator::from_fn(d, d, |r, c| {
            let [re, im] = self.rows[r][c];
            C64::new(re, im)
        }))
    }
}

pub fn operator_to_json(m: &Operator) -> Result<String> {
    Ok(serde_json::to_string_pretty(&MatrixFile::from_operator(m))?)
}

pub fn operator_from_json(text: &str) -> Result<Operator> {
    let file: MatrixFile = serde_json::from_str(text)?;
    file.to_operator()
}

pub fn dump_operator(path: &Path, m: &Operator) -> Result<()> {
    std::fs::write(path, operator_to_json(m)? + "\n")?;
    Ok(())
}

pub fn load_operator(path: &Path) -> Result<Operator> {
    operator_from_json(&std::fs::read_to_string(path)?)
}

/// `{ "d": int, "amplitudes": [[re, im], …] }` in centered order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KetFile {
    pub d: u32,
    pub amplitudes: Vec<[f64; 2]>,
}

impl KetFile {
    pub fn from_ket(v: &Ket) -> Self {
        Self {
            d: v.len() as u32,
            amplitudes: v.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_ket(&self) -> Result<Ket> {
        let d = Dim::new(self.d)?.size();
        if self.amplitudes.len() != d {
            return Err(Error::Parse(format!(
                "expected {d} amplitudes, found {}",
                self.amplitudes.len()
            )));
        }
        Ok(Ket::from_iterator(
            d,
            self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)),
        ))
    }
}

pub fn ket_from_json(text: &str) -> Result<Ket> {
    let file: KetFile = serde_json::from_str(text)?;
    file.to_ket()
}

pub fn load_ket(path: &Path) -> Result<Ket> {
    ket_from_json(&std::fs::read_to_string(path)?)
}

/// One row of the coefficient / Wigner-Weyl table.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct TableRow {
    pub nu: u8,
    pub alpha: i64,
    pub beta: i64,
    #[serde(rename = "re_F")]
    pub re_f: Option<f64>,
    #[serde(rename = "im_F")]
    pub im_f: Option<f64>,
    #[serde(rename = "Q")]
    pub q: Option<f64>,
    #[serde(rename = "re_W")]
    pub re_w: Option<f64>,
    #[serde(rename = "im_W")]
    pub im_w: Option<f64>,
}

/// Joins a Bargmann table and/or a unified table into rows in frame order.
pub fn table_rows(bargmann: Option<&BargmannTable>, ww: Option<&WWTable>) -> Vec<TableRow> {
    let (d, n_nu) = match (bargmann, ww) {
        (Some(b), _) => (b.d, b.kind.n_nu()),
        (None, Some(w)) => (w.d, 2),
        (None, None) => return vec![],
    };
    points(d, n_nu)
        .into_iter()
        .map(|p| {
            let label = PointLabel::from(p);
            let f = bargmann.map(|b| b.values[slot(d, p)]);
            let w = ww.map(|t| t.get(p));
            TableRow {
                nu: label.nu,
                alpha: label.alpha,
                beta: label.beta,
                re_f: f.map(|z| z.re),
                im_f: f.map(|z| z.im),
                q: f.map(|z| z.norm_sqr()),
                re_w: w.map(|z| z.re),
                im_w: w.map(|z| z.im),
            }
        })
        .collect()
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

impl TableRow {
    /// Presentation copy rounded to `places` decimals.
    pub fn rounded(&self, places: u32) -> Self {
        let r = |x: Option<f64>| x.map(|v| round_to(v, places));
        Self {
            re_f: r(self.re_f),
            im_f: r(self.im_f),
            q: r(self.q),
            re_w: r(self.re_w),
            im_w: r(self.im_w),
            ..*self
        }
    }
}

pub fn write_table_csv<W: Write>(out: W, rows: &[TableRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
