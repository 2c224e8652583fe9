//! Matroid input format:
//!
//! ```text
//! {"type": "linear", "matrix": <matrix>}
//! {"type": "lines", "n": 5, "lines": [[0, 1, 2, 3]]}
//! {"type": "uniform", "r": 3, "n": 7}
//! {"type": "named", "name": "fano" | "non_pappus"}
//! {"type": "explicit", "n": 2, "ranks": [0, 1, 1, 2]}
//! ```
//!
//! `explicit` lists the rank of every subset, indexed by bitmask.

use serde_json::Value;

use super::{Matroid, MatroidError, RankTable};
use crate::exactlin::ExactMatrix;

fn parse_err(msg: impl Into<String>) -> MatroidError {
    MatroidError::Parse(msg.into())
}

fn usize_field(v: &Value, key: &str) -> Result<usize, MatroidError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("missing nonnegative integer \"{key}\"")))
}

fn usize_list(v: &Value) -> Result<Vec<usize>, MatroidError> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of integers"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| parse_err(format!("bad integer {x}")))
        })
        .collect()
}

/// Reads an explicit rank table without validating it as a matroid.
pub fn rank_table_from_json(v: &Value) -> Result<RankTable, MatroidError> {
    let n = usize_field(v, "n")?;
    let ranks = usize_list(
        v.get("ranks")
            .ok_or_else(|| parse_err("missing \"ranks\""))?,
    )?;
    RankTable::new(n, ranks)
}

pub fn matroid_from_json(v: &Value) -> Result<Matroid, MatroidError> {
    let kind = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing \"type\""))?;
    match kind {
        "linear" => {
            let matrix = v
                .get("matrix")
                .ok_or_else(|| parse_err("missing \"matrix\""))?;
            Matroid::linear(ExactMatrix::from_json(matrix)?)
        }
        "lines" => {
            let n = usize_field(v, "n")?;
            let lines = v
                .get("lines")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("missing \"lines\" array"))?
                .iter()
                .map(usize_list)
                .collect::<Result<Vec<_>, _>>()?;
            Matroid::from_lines(n, &lines)
        }
        "uniform" => Matroid::uniform(usize_field(v, "r")?, usize_field(v, "n")?),
        "named" => {
            let name = v
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err("missing \"name\""))?;
            Matroid::named(name)
        }
        "explicit" => Matroid::from_rank_table(rank_table_from_json(v)?),
        other => Err(parse_err(format!("unknown matroid type `{other}`"))),
    }
}
