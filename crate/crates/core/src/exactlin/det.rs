use super::{Elem, ExactMatrix, LinAlgError};

/// Largest size accepted by [`det_permutation_sum`].
pub const PERMUTATION_SUM_MAX: usize = 10;

fn require_square(a: &ExactMatrix) -> Result<(), LinAlgError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(LinAlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Determinant as the signed sum over all permutations.
///
/// Permutations are generated with Heap's algorithm; each step is a single
/// transposition, so the sign flips at every step.
pub fn det_permutation_sum(a: &ExactMatrix) -> Result<Elem, LinAlgError> {
    require_square(a)?;
    let n = a.rows();
    if n > PERMUTATION_SUM_MAX {
        return Err(LinAlgError::TooLarge {
            size: n,
            max: PERMUTATION_SUM_MAX,
        });
    }
    let f = a.field();
    let term = |perm: &[usize]| -> Elem {
        perm.iter()
            .enumerate()
            .fold(f.one(), |acc, (i, &j)| f.mul(&acc, a.get(i, j)))
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut positive = true;
    let mut total = term(&perm);
    let mut counters = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let k = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(k, i);
            positive = !positive;
            let t = term(&perm);
            total = if positive {
                f.add(&total, &t)
            } else {
                f.sub(&total, &t)
            };
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Determinant by Gaussian elimination: product of pivots times the sign of
/// the row swaps.
pub fn det_elimination(a: &ExactMatrix) -> Result<Elem, LinAlgError> {
    require_square(a)?;
    let n = a.rows();
    let f = a.field();
    let mut m = a.clone();
    let e = m.entries_mut();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&e[i * n + c])) else {
            return Ok(f.zero());
        };
        if p != c {
            for j in 0..n {
                e.swap(p * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let pivot = e[c * n + c].clone();
        det = f.mul(&det, &pivot);
        let inv = f.inv(&pivot)?;
        for i in c + 1..n {
            let factor = f.mul(&e[i * n + c], &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = f.mul(&factor, &e[c * n + j]);
                e[i * n + j] = f.sub(&e[i * n + j], &v);
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    #[test]
    fn two_by_two() {
        let q = FieldSpec::Rationals;
        let a = ExactMatrix::from_i64_rows(q, &[[1, 2], [3, 4]]).unwrap();
        assert_eq!(det_permutation_sum(&a).unwrap(), q.from_i64(-2));
        assert_eq!(det_elimination(&a).unwrap(), q.from_i64(-2));
    }

    #[test]
    fn identity_and_zero_row() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(7).unwrap()] {
            let id = ExactMatrix::identity(f, 5);
            assert_eq!(det_permutation_sum(&id).unwrap(), f.one());
            assert_eq!(det_elimination(&id).unwrap(), f.one());
            let z = ExactMatrix::from_i64_rows(f, &[[1, 2, 3], [0, 0, 0], [4, 5, 6]]).unwrap();
            assert_eq!(det_permutation_sum(&z).unwrap(), f.zero());
            assert_eq!(det_elimination(&z).unwrap(), f.zero());
        }
    }

    #[test]
    fn errors() {
        let q = FieldSpec::Rationals;
        let rect = ExactMatrix::zeros(q, 2, 3);
        assert!(matches!(
            det_permutation_sum(&rect),
            Err(LinAlgError::NotSquare { .. })
        ));
        assert!(matches!(
            det_elimination(&rect),
            Err(LinAlgError::NotSquare { .. })
        ));
        let big = ExactMatrix::identity(q, 11);
        assert!(matches!(
            det_permutation_sum(&big),
            Err(LinAlgError::TooLarge { .. })
        ));
        assert_eq!(det_elimination(&big).unwrap(), q.one());
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let q = FieldSpec::Rationals;
        let e = ExactMatrix::zeros(q, 0, 0);
        assert_eq!(det_permutation_sum(&e).unwrap(), q.one());
        assert_eq!(det_elimination(&e).unwrap(), q.one());
    }
}
