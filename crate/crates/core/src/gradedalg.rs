//! Truncated monomial algebras `𝔽[x_1..x_N] / (x_i^(m_i + 1))` with
//! positive integer degrees on the generators.
//!
//! Graded dimensions count the ways to pay `k` with at most `m_i` coins of
//! denomination `deg x_i`. When every generator has degree 1, the element
//! `ω = x_1 + .. + x_N` acts between consecutive graded pieces and the
//! hard Lefschetz maps `ω^(topdeg - 2i)` can be checked by exact rank.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::{rank, ExactMatrix, FieldSpec, LinAlgError};

/// Largest top degree for the dimension table.
pub const DIMS_TOPDEG_MAX: u64 = 1_000_000;
/// Largest top degree accepted by [`hlp_check`].
pub const HLP_TOPDEG_MAX: u64 = 24;
/// Largest total monomial count accepted by [`hlp_check`].
pub const HLP_BASIS_MAX: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("{caps} caps but {degrees} degrees")]
    LengthMismatch { caps: usize, degrees: usize },
    #[error("generator {0} has degree 0")]
    ZeroDegree(usize),
    #[error("{what} = {value} exceeds the limit {max}")]
    TooLarge {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("omega maps need every generator in degree 1")]
    WeightedDegrees,
    #[error("dimension count overflowed")]
    Overflow,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent caps `m_i` and generator degrees `deg x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAlgebraSpec {
    caps: Vec<u32>,
    degrees: Vec<u32>,
}

impl MonomialAlgebraSpec {
    pub fn new(caps: Vec<u32>, degrees: Vec<u32>) -> Result<Self, GradedError> {
        if caps.len() != degrees.len() {
            return Err(GradedError::LengthMismatch {
                caps: caps.len(),
                degrees: degrees.len(),
            });
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(GradedError::ZeroDegree(i));
        }
        Ok(MonomialAlgebraSpec { caps, degrees })
    }

    /// All generators in degree 1.
    pub fn standard(caps: Vec<u32>) -> Self {
        let degrees = vec![1; caps.len()];
        MonomialAlgebraSpec { caps, degrees }
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.caps.len()
    }

    pub fn topdeg(&self) -> u64 {
        self.caps
            .iter()
            .zip(&self.degrees)
            .map(|(&m, &d)| u64::from(m) * u64::from(d))
            .sum()
    }

    pub fn is_standard(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Total number of surviving monomials, `Π (m_i + 1)`.
    pub fn total_monomials(&self) -> Option<u64> {
        self.caps
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(u64::from(m) + 1))
    }

    pub fn from_json(v: &Value) -> Result<Self, GradedError> {
        let list = |key: &str| -> Result<Vec<u32>, GradedError> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| GradedError::Parse(format!("missing \"{key}\" array")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| GradedError::Parse(format!("bad entry {x} in \"{key}\"")))
                })
                .collect()
        };
        Self::new(list("caps")?, list("degrees")?)
    }

    pub fn to_json(&self) -> Value {
        json!({ "caps": self.caps, "degrees": self.degrees })
    }
}

/// `dims[k]` for `k = 0..=topdeg`, by bounded-coin dynamic programming.
pub fn graded_dims(spec: &MonomialAlgebraSpec) -> Result<Vec<u64>, GradedError> {
    let top = spec.topdeg();
    if top > DIMS_TOPDEG_MAX {
        return Err(GradedError::TooLarge {
            what: "topdeg",
            value: top,
            max: DIMS_TOPDEG_MAX,
        });
    }
    let len = top as usize + 1;
    let mut dims = vec![0u64; len];
    dims[0] = 1;
    let mut reach = 0usize;
    for (&m, &d) in spec.caps.iter().zip(&spec.degrees) {
        let d = d as usize;
        let window = (m as usize + 1) * d;
        reach += m as usize * d;
        let mut next = vec![0u64; len];
        // next[k] = Σ_{j=0..=m} dims[k - j d], as a sliding window per residue.
        for k in 0..=reach {
            let mut v = u128::from(dims[k]);
            if k >= d {
                v += u128::from(next[k - d]);
            }
            if k >= window {
                v -= u128::from(dims[k - window]);
            }
            next[k] = u64::try_from(v).map_err(|_| GradedError::Overflow)?;
        }
        dims = next;
    }
    Ok(dims)
}

/// Exponent vectors of degree `k`, in lexicographic order.
pub fn monomial_basis(spec: &MonomialAlgebraSpec, k: u64) -> Vec<Vec<u32>> {
    fn go(
        spec: &MonomialAlgebraSpec,
        i: usize,
        left: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == spec.caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = u64::from(spec.degrees[i]);
        let rest: u64 = spec.caps[i + 1..]
            .iter()
            .zip(&spec.degrees[i + 1..])
            .map(|(&m, &d)| u64::from(m) * u64::from(d))
            .sum();
        for e in 0..=spec.caps[i] {
            let used = u64::from(e) * d;
            if used > left {
                break;
            }
            if left - used > rest {
                continue;
            }
            cur.push(e);
            go(spec, i + 1, left - used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= spec.topdeg() {
        go(
            spec,
            0,
            k,
            &mut Vec::with_capacity(spec.caps.len()),
            &mut out,
        );
    }
    out
}

/// Matrix of multiplication by `ω` from degree `k` to degree `k + 1`, over ℚ,
/// in the lexicographic monomial bases.
pub fn omega_matrix(spec: &MonomialAlgebraSpec, k: u64) -> Result<ExactMatrix, GradedError> {
    if !spec.is_standard() {
        return Err(GradedError::WeightedDegrees);
    }
    let source = monomial_basis(spec, k);
    let target = monomial_basis(spec, k + 1);
    let q = FieldSpec::Rationals;
    let mut m = ExactMatrix::zeros(q, target.len(), source.len());
    for (col, e) in source.iter().enumerate() {
        for i in 0..e.len() {
            if e[i] < spec.caps[i] {
                let mut up = e.clone();
                up[i] += 1;
                let row = target
                    .binary_search(&up)
                    .expect("raised monomial is in the next degree");
                m.set(row, col, q.one())?;
            }
        }
    }
    Ok(m)
}

/// Matrix of `ω^(to - from)` from degree `from` to degree `to`, as a
/// product of single-step matrices.
pub fn omega_power_matrix(
    spec: &MonomialAlgebraSpec,
    from: u64,
    to: u64,
) -> Result<ExactMatrix, GradedError> {
    if !spec.is_standard() {
        return Err(GradedError::WeightedDegrees);
    }
    let mut acc = ExactMatrix::identity(FieldSpec::Rationals, monomial_basis(spec, from).len());
    for k in from..to {
        acc = omega_matrix(spec, k)?.mul(&acc)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzMap {
    pub degree: u64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl LefschetzMap {
    pub fn is_isomorphism(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlpReport {
    pub dims: Vec<u64>,
    pub maps: Vec<LefschetzMap>,
}

impl HlpReport {
    pub fn passed(&self) -> bool {
        self.maps.iter().all(LefschetzMap::is_isomorphism)
    }

    pub fn to_json(&self) -> Value {
        let maps: Vec<Value> = self
            .maps
            .iter()
            .map(|m| {
                json!({
                    "i": m.degree,
                    "source_dim": m.source_dim,
                    "target_dim": m.target_dim,
                    "rank": m.rank,
                    "isomorphism": m.is_isomorphism(),
                })
            })
            .collect();
        json!({ "dims": self.dims, "maps": maps, "pass": self.passed() })
    }
}

/// Checks that `ω^(topdeg - 2i)` maps degree `i` isomorphically onto degree
/// `topdeg - i` for every `i < topdeg / 2`.
pub fn hlp_check(spec: &MonomialAlgebraSpec) -> Result<HlpReport, GradedError> {
    if !spec.is_standard() {
        return Err(GradedError::WeightedDegrees);
    }
    let top = spec.topdeg();
    if top > HLP_TOPDEG_MAX {
        return Err(GradedError::TooLarge {
            what: "topdeg",
            value: top,
            max: HLP_TOPDEG_MAX,
        });
    }
    let total = spec.total_monomials().unwrap_or(u64::MAX);
    if total > HLP_BASIS_MAX {
        return Err(GradedError::TooLarge {
            what: "basis size",
            value: total,
            max: HLP_BASIS_MAX,
        });
    }
    let dims = graded_dims(spec)?;
    let maps = (0..top.div_ceil(2))
        .into_par_iter()
        .map(|i| {
            let m = omega_power_matrix(spec, i, top - i)?;
            Ok(LefschetzMap {
                degree: i,
                source_dim: m.cols(),
                target_dim: m.rows(),
                rank: rank(&m),
            })
        })
        .collect::<Result<Vec<_>, GradedError>>()?;
    Ok(HlpReport { dims, maps })
}

pub fn palindrome_check(spec: &MonomialAlgebraSpec) -> Result<bool, GradedError> {
    let dims = graded_dims(spec)?;
    Ok(dims.iter().eq(dims.iter().rev()))
}

/// Weakly increasing up to a peak, then weakly decreasing.
pub fn unimodal_check(dims: &[u64]) -> bool {
    let peak = dims.windows(2).take_while(|w| w[0] <= w[1]).count();
    dims[peak..].windows(2).all(|w| w[0] >= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    const WON: [u32; 6] = [1, 5, 10, 50, 100, 500];

    #[test]
    fn won_tables() {
        let once = MonomialAlgebraSpec::new(vec![1; 6], WON.to_vec()).unwrap();
        let dims = graded_dims(&once).unwrap();
        assert_eq!(&dims[..13], &[1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0]);

        let many = MonomialAlgebraSpec::new(vec![20; 6], WON.to_vec()).unwrap();
        let dims = graded_dims(&many).unwrap();
        assert_eq!(&dims[..13], &[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 4, 4, 4]);
    }

    #[test]
    fn exterior_algebra_dims_are_binomial() {
        let spec = MonomialAlgebraSpec::standard(vec![1; 6]);
        assert_eq!(graded_dims(&spec).unwrap(), vec![1, 6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn dims_match_basis_enumeration() {
        let spec = MonomialAlgebraSpec::new(vec![2, 3, 1], vec![1, 2, 3]).unwrap();
        let dims = graded_dims(&spec).unwrap();
        for (k, &d) in dims.iter().enumerate() {
            let basis = monomial_basis(&spec, k as u64);
            assert_eq!(basis.len() as u64, d);
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(dims.iter().sum::<u64>(), spec.total_monomials().unwrap());
    }

    #[test]
    fn omega_single_step() {
        let spec = MonomialAlgebraSpec::standard(vec![3, 1]);
        let w0 = omega_matrix(&spec, 0).unwrap();
        assert_eq!(
            w0,
            ExactMatrix::from_i64_rows(FieldSpec::Rationals, &[[1], [1]]).unwrap()
        );
        assert_eq!(monomial_basis(&spec, 1), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn omega_fourth_power_of_one() {
        let spec = MonomialAlgebraSpec::standard(vec![3, 1]);
        assert_eq!(monomial_basis(&spec, 4), vec![vec![3, 1]]);
        let m = omega_power_matrix(&spec, 0, 4).unwrap();
        assert_eq!(
            m,
            ExactMatrix::from_i64_rows(FieldSpec::Rationals, &[[4]]).unwrap()
        );
    }

    #[test]
    fn omega_squared_on_degree_one() {
        // ω²(c1 x1 + c2 x2) = c1 x1³ + (c2 + 2 c1) x1² x2
        let spec = MonomialAlgebraSpec::standard(vec![3, 1]);
        let m = omega_power_matrix(&spec, 1, 3).unwrap();
        // degree 1 basis: [x2, x1]; degree 3 basis: [x1² x2, x1³]
        assert_eq!(monomial_basis(&spec, 3), vec![vec![2, 1], vec![3, 0]]);
        let q = FieldSpec::Rationals;
        let (c1, c2) = (q.from_i64(5), q.from_i64(-3));
        let image = m.mul_vec(&[c2.clone(), c1.clone()]).unwrap();
        assert_eq!(image[1], c1);
        assert_eq!(image[0], q.add(&c2, &q.mul(&q.from_i64(2), &c1)));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn hlp_examples() {
        let r = hlp_check(&MonomialAlgebraSpec::standard(vec![3, 1])).unwrap();
        assert_eq!(r.maps.len(), 2);
        assert!(r.passed());
        assert!(hlp_check(&MonomialAlgebraSpec::standard(vec![5]))
            .unwrap()
            .passed());
        let r = hlp_check(&MonomialAlgebraSpec::standard(vec![1, 1, 1])).unwrap();
        assert_eq!(r.dims, vec![1, 3, 3, 1]);
        assert!(r.passed());
        assert_eq!(r.maps[1].rank, 3);
    }

    #[test]
    fn hlp_guards() {
        let weighted = MonomialAlgebraSpec::new(vec![1, 1], vec![1, 2]).unwrap();
        assert_eq!(
            hlp_check(&weighted).unwrap_err(),
            GradedError::WeightedDegrees
        );
        assert_eq!(
            omega_matrix(&weighted, 0).unwrap_err(),
            GradedError::WeightedDegrees
        );
        let big = MonomialAlgebraSpec::standard(vec![25]);
        assert!(matches!(hlp_check(&big), Err(GradedError::TooLarge { .. })));
        let wide = MonomialAlgebraSpec::standard(vec![1; 17]);
        assert!(matches!(
            hlp_check(&wide),
            Err(GradedError::TooLarge { .. })
        ));
    }

    #[test]
    fn palindrome_and_unimodality() {
        let won = MonomialAlgebraSpec::new(vec![1; 6], WON.to_vec()).unwrap();
        assert!(palindrome_check(&won).unwrap());
        assert!(!unimodal_check(&graded_dims(&won).unwrap()));
        let cube = MonomialAlgebraSpec::standard(vec![2, 2, 2]);
        assert!(palindrome_check(&cube).unwrap());
        assert!(unimodal_check(&graded_dims(&cube).unwrap()));
        assert!(unimodal_check(&[3, 3, 3]));
        assert!(unimodal_check(&[]));
        assert!(!unimodal_check(&[1, 2, 1, 2]));
    }

    #[test]
    fn spec_validation_and_json() {
        assert!(MonomialAlgebraSpec::new(vec![1], vec![1, 2]).is_err());
        assert_eq!(
            MonomialAlgebraSpec::new(vec![1], vec![0]).unwrap_err(),
            GradedError::ZeroDegree(0)
        );
        let v = json!({"caps": [3, 1], "degrees": [1, 1]});
        let spec = MonomialAlgebraSpec::from_json(&v).unwrap();
        assert_eq!(spec.to_json(), v);
        assert!(graded_dims(&MonomialAlgebraSpec::new(vec![2_000_000], vec![1]).unwrap()).is_err());
    }
}
