//! File schemas and number formatting.
//!
//! * Matrix: `{"dim": d, "rows": [[[re, im], …], …]}`.
//! * POVM: `{"dim": d, "vectors": [[[re, im] × d] × k]}`.
//!
//! JSON output carries 12 significant digits, CSV output 9.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};
use crate::measure::{validate_povm, RankOnePOVM};

pub const JSON_DIGITS: usize = 12;
pub const CSV_DIGITS: usize = 9;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    dim: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PovmFile {
    dim: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

fn to_complex(v: &[[f64; 2]]) -> Vec<C64> {
    v.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

fn to_pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    let m = ComplexMatrix::from_rows(f.rows.iter().map(|r| to_complex(r)).collect())?;
    if m.dim() != f.dim {
        return Err(Error::dim(format!("declared dim {} but found {} rows", f.dim, m.dim())));
    }
    Ok(m)
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    let f = MatrixFile { dim: m.dim(), rows: m.rows().iter().map(|r| to_pairs(r)).collect() };
    serde_json::to_value(f).expect("matrix serialises")
}

pub fn parse_povm(text: &str) -> Result<RankOnePOVM> {
    let f: PovmFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("POVM JSON: {e}")))?;
    validate_povm(f.vectors.iter().map(|v| to_complex(v)).collect(), f.dim)
}

pub fn povm_value(p: &RankOnePOVM) -> Value {
    let f = PovmFile { dim: p.dim(), vectors: p.vectors().iter().map(|v| to_pairs(v)).collect() };
    serde_json::to_value(f).expect("POVM serialises")
}

/// `x` rounded to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 || digits == 0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().expect("formatted float parses")
}

/// Rounds every floating-point number in `v` to `digits` significant digits.
pub fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, digits)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

/// Pretty JSON with numbers rounded to [`JSON_DIGITS`].
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Parse(format!("serialisation: {e}")))?;
    round_value(&mut v, JSON_DIGITS);
    Ok(serde_json::to_string_pretty(&v).expect("value serialises"))
}

/// A CSV cell with [`CSV_DIGITS`] significant digits.
pub fn csv_number(x: f64) -> String {
    format!("{}", round_sig(x, CSV_DIGITS))
}
