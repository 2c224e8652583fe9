//! Matrix wire format:
//! `{"field": "Q" | {"p": 5}, "rows": [[entry, ...], ...]}` where rational
//! entries are integers or `"num/den"` strings and residues are integers in
//! `[0, p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{Elem, ExactMatrix, FieldSpec, LinAlgError};

fn parse_err(msg: impl Into<String>) -> LinAlgError {
    LinAlgError::Parse(msg.into())
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec, LinAlgError> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(obj) => {
            let p = obj
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("field object needs an integer \"p\""))?;
            FieldSpec::prime(p)
        }
        other => Err(parse_err(format!("bad field {other}"))),
    }
}

pub fn field_to_json(f: &FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::PrimeField(p) => json!({ "p": p.get() }),
    }
}

/// Parses an integer or `"num/den"` string into a rational.
pub fn rational_from_json(v: &Value) -> Result<BigRational, LinAlgError> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                parse_err(format!("rational entry {n} must be an integer or a string"))
            })?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => parse_rational(s),
        other => Err(parse_err(format!("bad rational entry {other}"))),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, LinAlgError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| parse_err(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| parse_err(format!("bad rational `{s}`")))?;
    if den == BigInt::from(0) {
        return Err(parse_err(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

fn elem_from_json(field: &FieldSpec, v: &Value) -> Result<Elem, LinAlgError> {
    match field {
        FieldSpec::Rationals => Ok(Elem::Rational(rational_from_json(v)?)),
        FieldSpec::PrimeField(p) => {
            let r = v.as_u64().ok_or_else(|| {
                parse_err(format!("residue entry {v} must be a nonnegative integer"))
            })?;
            if r >= u64::from(p.get()) {
                return Err(parse_err(format!("residue {r} outside [0, {})", p.get())));
            }
            Ok(Elem::Residue(r as u32))
        }
    }
}

impl ExactMatrix {
    pub fn from_json(v: &Value) -> Result<Self, LinAlgError> {
        let field = field_from_json(
            v.get("field")
                .ok_or_else(|| parse_err("missing \"field\""))?,
        )?;
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing \"rows\" array"))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| parse_err("each row must be an array"))?
                    .iter()
                    .map(|e| elem_from_json(&field, e))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        ExactMatrix::from_rows(field, cols, parsed)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows())
            .map(|i| {
                Value::Array(
                    self.row(i)
                        .iter()
                        .map(|e| self.field().elem_json(e))
                        .collect(),
                )
            })
            .collect();
        json!({ "field": field_to_json(&self.field()), "rows": rows })
    }
}

/// Serializes an entry list in the same per-entry format as matrices.
pub fn elems_to_json(field: &FieldSpec, elems: &[Elem]) -> Value {
    Value::Array(elems.iter().map(|e| field.elem_json(e)).collect())
}
