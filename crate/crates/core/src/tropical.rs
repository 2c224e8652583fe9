//! Max-plus evaluation over `ℚ ∪ {-∞}` and tropical linear spaces of
//! matroids.
//!
//! A tropical polynomial "vanishes" at a point when the maximum over its
//! terms is attained at least twice (or every term is `-∞`). The tropical
//! linear space of a matroid is the set of points where, for every circuit,
//! the maximum of the circuit's coordinates is attained at least twice.
//! Finite values are exact rationals so ties are decided exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::json::parse_rational;
use crate::matroid::{Matroid, MatroidError, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("term {0:?} has a negative exponent on a -inf coordinate")]
    UndefinedTerm(Vec<i64>),
    #[error("polynomial needs at least one term")]
    NoTerms,
    #[error("exponent vector {0:?} appears twice")]
    DuplicateExponent(Vec<i64>),
    #[error("circuits {0:?} and {1:?} are nested")]
    NestedCircuits(Vec<usize>, Vec<usize>),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An element of `ℚ ∪ {-∞}`. Derived ordering puts `-∞` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropValue {
    NegInf,
    Finite(BigRational),
}

impl TropValue {
    pub fn zero() -> Self {
        TropValue::Finite(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        TropValue::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, TropValue::NegInf)
    }

    /// Tropical product (ordinary sum).
    #[must_use]
    pub fn plus(&self, other: &TropValue) -> TropValue {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::NegInf,
        }
    }

    /// `k · self`, with `0 · (-∞) = 0`; undefined for `k < 0` at `-∞`.
    pub fn times(&self, k: i64) -> Option<TropValue> {
        match self {
            TropValue::Finite(a) => {
                Some(TropValue::Finite(a * BigRational::from_integer(k.into())))
            }
            TropValue::NegInf => match k.cmp(&0) {
                Ordering::Greater => Some(TropValue::NegInf),
                Ordering::Equal => Some(TropValue::zero()),
                Ordering::Less => None,
            },
        }
    }

    /// Parses `"-inf"`, `"num/den"`, integers and decimal numbers.
    pub fn from_json(v: &Value) -> Result<Self, TropicalError> {
        let err = || TropicalError::Parse(format!("bad coordinate {v}"));
        match v {
            Value::String(s) if s.trim() == "-inf" => Ok(TropValue::NegInf),
            Value::String(s) => parse_rational(s).map(TropValue::Finite).map_err(|_| err()),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    return Ok(TropValue::from_int(i));
                }
                parse_decimal(&n.to_string())
                    .map(TropValue::Finite)
                    .ok_or_else(err)
            }
            _ => Err(err()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TropValue::NegInf => json!("-inf"),
            TropValue::Finite(q) if q.is_integer() => match q.numer().to_i64() {
                Some(i) => json!(i),
                None => json!(q.to_string()),
            },
            TropValue::Finite(q) => json!(q.to_string()),
        }
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::NegInf => write!(f, "-inf"),
            TropValue::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// Exact value of a decimal literal such as `-1.25` or `3e-2`.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    })
}

pub type TropPoint = Vec<TropValue>;

pub fn point_from_json(v: &Value) -> Result<TropPoint, TropicalError> {
    v.get("coords")
        .and_then(Value::as_array)
        .ok_or_else(|| TropicalError::Parse("missing \"coords\" array".into()))?
        .iter()
        .map(TropValue::from_json)
        .collect()
}

pub fn point_to_json(p: &[TropValue]) -> Value {
    json!({ "coords": p.iter().map(TropValue::to_json).collect::<Vec<_>>() })
}

/// `max_β (⟨β, ξ⟩ + ν(a_β))`, stored as exponent vectors with coefficient
/// valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPolynomial {
    n: usize,
    terms: Vec<(Vec<i64>, TropValue)>,
}

impl TropPolynomial {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, TropValue)>) -> Result<Self, TropicalError> {
        if terms.is_empty() {
            return Err(TropicalError::NoTerms);
        }
        for (i, (beta, _)) in terms.iter().enumerate() {
            if beta.len() != n {
                return Err(TropicalError::DimensionMismatch {
                    expected: n,
                    got: beta.len(),
                });
            }
            if terms[..i].iter().any(|(b, _)| b == beta) {
                return Err(TropicalError::DuplicateExponent(beta.clone()));
            }
        }
        Ok(TropPolynomial { n, terms })
    }

    /// `max(0, ξ_1, .., ξ_n)`.
    pub fn hyperplane(n: usize) -> Self {
        let mut terms = vec![(vec![0; n], TropValue::zero())];
        terms.extend((0..n).map(|i| (unit(n, i), TropValue::zero())));
        TropPolynomial { n, terms }
    }

    /// Tropicalization of the linear form `Σ λ_i y_i` under the trivial
    /// valuation on ℚ: one term `y_i` (valuation 0) per nonzero `λ_i`.
    pub fn linear_form(coeffs: &[BigRational]) -> Result<Self, TropicalError> {
        let n = coeffs.len();
        let terms = (0..n)
            .filter(|&i| !coeffs[i].is_zero())
            .map(|i| (unit(n, i), TropValue::zero()))
            .collect();
        Self::new(n, terms)
    }

    /// `max_{i ∈ S} y_i`, the tropical hyperplane of a circuit.
    pub fn circuit_form(n: usize, circuit: Subset) -> Result<Self, TropicalError> {
        Self::new(
            n,
            circuit
                .iter()
                .map(|i| (unit(n, i), TropValue::zero()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<i64>, TropValue)] {
        &self.terms
    }

    pub fn from_json(v: &Value) -> Result<Self, TropicalError> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| TropicalError::Parse("missing integer \"n\"".into()))?
            as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| TropicalError::Parse("missing \"terms\" array".into()))?
            .iter()
            .map(|t| {
                let beta = t
                    .get("beta")
                    .and_then(Value::as_array)
                    .ok_or_else(|| TropicalError::Parse("term needs \"beta\"".into()))?
                    .iter()
                    .map(|b| {
                        b.as_i64()
                            .ok_or_else(|| TropicalError::Parse(format!("bad exponent {b}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let val = TropValue::from_json(
                    t.get("val")
                        .ok_or_else(|| TropicalError::Parse("term needs \"val\"".into()))?,
                )?;
                Ok((beta, val))
            })
            .collect::<Result<Vec<_>, TropicalError>>()?;
        Self::new(n, terms)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn check_dim(expected: usize, xi: &[TropValue]) -> Result<(), TropicalError> {
    if xi.len() != expected {
        return Err(TropicalError::DimensionMismatch {
            expected,
            got: xi.len(),
        });
    }
    Ok(())
}

/// Maximum over terms and the number of terms attaining it. When every term
/// is `-∞`, all of them count as attaining.
pub fn trop_eval(
    p: &TropPolynomial,
    xi: &[TropValue],
) -> Result<(TropValue, usize), TropicalError> {
    check_dim(p.n, xi)?;
    let mut values = Vec::with_capacity(p.terms.len());
    for (beta, val) in &p.terms {
        let mut acc = val.clone();
        for (&b, x) in beta.iter().zip(xi) {
            let part = x
                .times(b)
                .ok_or_else(|| TropicalError::UndefinedTerm(beta.clone()))?;
            acc = acc.plus(&part);
        }
        values.push(acc);
    }
    let max = values.iter().max().expect("at least one term").clone();
    let count = values.iter().filter(|v| **v == max).count();
    Ok((max, count))
}

pub fn vanishes(p: &TropPolynomial, xi: &[TropValue]) -> Result<bool, TropicalError> {
    let (value, count) = trop_eval(p, xi)?;
    Ok(count >= 2 || value.is_neg_inf())
}

/// The circuit description of a tropical linear space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropLinearSpace {
    n: usize,
    circuits: Vec<Subset>,
}

impl TropLinearSpace {
    pub fn new(n: usize, circuits: Vec<Subset>) -> Result<Self, TropicalError> {
        for (i, &a) in circuits.iter().enumerate() {
            for &b in &circuits[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    return Err(TropicalError::NestedCircuits(a.to_vec(), b.to_vec()));
                }
            }
        }
        Ok(TropLinearSpace { n, circuits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "circuits": self.circuits.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Tropical linear space of any matroid, realizable or not.
pub fn tropical_linear_space(m: &Matroid) -> Result<TropLinearSpace, TropicalError> {
    TropLinearSpace::new(m.n(), m.circuits()?)
}

/// On every circuit the maximum coordinate is attained twice, or all of the
/// circuit's coordinates are `-∞`.
pub fn member(t: &TropLinearSpace, xi: &[TropValue]) -> Result<bool, TropicalError> {
    check_dim(t.n, xi)?;
    Ok(t.circuits.iter().all(|c| {
        let max = c.iter().map(|i| &xi[i]).max();
        match max {
            None | Some(TropValue::NegInf) => true,
            Some(m) => c.iter().filter(|&i| &xi[i] == m).count() >= 2,
        }
    }))
}
