use std::fmt;

use super::{Elem, FieldSpec, LinAlgError};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Outcome of solving `A x = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    /// Row reduction produced an equation `0 = c'` with `c' != 0`.
    Inconsistent,
    Solutions {
        particular: Vec<Elem>,
        kernel: Vec<Vec<Elem>>,
    },
}

impl ExactMatrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
    ) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !field.contains(e)) {
            return Err(LinAlgError::FieldMismatch);
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from explicit rows; `cols` is needed for the 0-row case.
    pub fn from_rows(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinAlgError::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Self::new(field, nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(
        field: FieldSpec,
        rows: &[R],
    ) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let elems = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, elems)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Elem) -> Result<(), LinAlgError> {
        if !self.field.contains(&value) {
            return Err(LinAlgError::FieldMismatch);
        }
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        ExactMatrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinAlgError> {
        if self.field != rhs.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn rref(&self) -> RrefResult {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Elem] {
        &mut self.entries
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Gaussian elimination in place. Pivots are the first nonzero entry at or
/// below the current row; with `reduce_above` the pivot columns are cleared
/// completely and pivots scaled to 1. Returns the pivot columns.
fn eliminate(m: &mut ExactMatrix, reduce_above: bool) -> Vec<usize> {
    let f = m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        if reduce_above {
            for j in c..cols {
                let idx = r * cols + j;
                m.entries[idx] = f.mul(&m.entries[idx], &inv);
            }
        }
        let pivot_row: Vec<Elem> = m.row(r).to_vec();
        let targets: Box<dyn Iterator<Item = usize>> = if reduce_above {
            Box::new((0..rows).filter(move |&i| i != r))
        } else {
            Box::new(r + 1..rows)
        };
        for i in targets {
            let lead = m.get(i, c).clone();
            if f.is_zero(&lead) {
                continue;
            }
            let factor = if reduce_above {
                lead
            } else {
                f.mul(&lead, &inv)
            };
            for (j, p) in pivot_row.iter().enumerate().skip(c) {
                if f.is_zero(p) {
                    continue;
                }
                let idx = i * cols + j;
                m.entries[idx] = f.sub(&m.entries[idx], &f.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form.
pub fn rref(a: &ExactMatrix) -> RrefResult {
    let mut reduced = a.clone();
    let pivot_cols = eliminate(&mut reduced, true);
    RrefResult {
        rank: pivot_cols.len(),
        reduced,
        pivot_cols,
    }
}

/// Rank via forward elimination only.
pub fn rank(a: &ExactMatrix) -> usize {
    // Eliminate along the shorter side; rank is transpose-invariant.
    let mut m = if a.rows > a.cols {
        a.transpose()
    } else {
        a.clone()
    };
    eliminate(&mut m, false).len()
}

/// Basis of `{x : A x = 0}`, one vector per non-pivot column.
pub fn kernel_basis(a: &ExactMatrix) -> Vec<Vec<Elem>> {
    let RrefResult {
        reduced,
        pivot_cols,
        ..
    } = rref(a);
    kernel_from_rref(&reduced, &pivot_cols, a.cols)
}

fn kernel_from_rref(reduced: &ExactMatrix, pivot_cols: &[usize], ncols: usize) -> Vec<Vec<Elem>> {
    let f = reduced.field;
    let mut is_pivot = vec![false; ncols];
    for &c in pivot_cols {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(reduced.get(row, free));
            }
            v
        })
        .collect()
}

/// Solves `A x = c` exactly.
pub fn solve(a: &ExactMatrix, c: &[Elem]) -> Result<SolutionSet, LinAlgError> {
    if c.len() != a.rows {
        return Err(LinAlgError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            c.len(),
            a.rows
        )));
    }
    if c.iter().any(|e| !a.field.contains(e)) {
        return Err(LinAlgError::FieldMismatch);
    }
    let f = a.field;
    let ncols = a.cols;
    let augmented_rows = (0..a.rows)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(c[i].clone());
            row
        })
        .collect();
    let augmented = ExactMatrix::from_rows(f, ncols + 1, augmented_rows)?;
    let RrefResult {
        reduced,
        pivot_cols,
        ..
    } = rref(&augmented);
    if pivot_cols.last() == Some(&ncols) {
        return Ok(SolutionSet::Inconsistent);
    }
    let mut particular = vec![f.zero(); ncols];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = reduced.get(row, ncols).clone();
    }
    let kernel = kernel_from_rref(&reduced, &pivot_cols, ncols);
    Ok(SolutionSet::Solutions { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub(crate) fn fano_rows() -> Vec<[i64; 3]> {
        vec![
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 0, 1],
            [1, 1, 1],
        ]
    }

    fn assert_rref_shape(r: &RrefResult) {
        let f = r.reduced.field();
        for (row, &pc) in r.pivot_cols.iter().enumerate() {
            assert_eq!(r.reduced.get(row, pc), &f.one());
            for other in 0..r.reduced.rows() {
                if other != row {
                    assert!(f.is_zero(r.reduced.get(other, pc)));
                }
            }
            for j in 0..pc {
                assert!(f.is_zero(r.reduced.get(row, j)));
            }
        }
        assert!(r.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        for row in r.rank..r.reduced.rows() {
            assert!(r.reduced.row_is_zero(row));
        }
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id = ExactMatrix::identity(q(), 4);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivot_cols, vec![0, 1, 2, 3]);

        let z = ExactMatrix::zeros(q(), 3, 2);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn fano_points_have_full_column_rank() {
        let f2 = FieldSpec::prime(2).unwrap();
        let m = ExactMatrix::from_i64_rows(f2, &fano_rows()).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 3);
        assert_rref_shape(&r);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(q(), 5)), 5);
        let dup = ExactMatrix::from_i64_rows(q(), &[[1, 2], [1, 2]]).unwrap();
        assert_eq!(rank(&dup), 1);
    }

    #[test]
    fn rref_shape_on_mixed_matrix() {
        let m =
            ExactMatrix::from_i64_rows(q(), &[[0, 2, 4, 1], [0, 1, 2, 0], [3, 0, 1, 1]]).unwrap();
        let r = rref(&m);
        assert_rref_shape(&r);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 3]);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(q(), 3);
        let c = vec![q().from_i64(4), q().from_i64(-1), q().from_i64(7)];
        match solve(&id, &c).unwrap() {
            SolutionSet::Solutions { particular, kernel } => {
                assert_eq!(particular, c);
                assert!(kernel.is_empty());
            }
            SolutionSet::Inconsistent => panic!("identity system is solvable"),
        }

        let a = ExactMatrix::from_i64_rows(q(), &[[1, 1]]).unwrap();
        match solve(&a, &[q().zero()]).unwrap() {
            SolutionSet::Solutions { kernel, .. } => {
                assert_eq!(kernel, vec![vec![q().from_i64(-1), q().from_i64(1)]]);
            }
            SolutionSet::Inconsistent => panic!(),
        }

        let z = ExactMatrix::zeros(q(), 2, 2);
        assert_eq!(
            solve(&z, &[q().one(), q().zero()]).unwrap(),
            SolutionSet::Inconsistent
        );
        assert!(solve(&z, &[q().one()]).is_err());
    }

    #[test]
    fn solve_with_fractions() {
        let a = ExactMatrix::from_i64_rows(q(), &[[2, 1, 0], [0, 3, 1]]).unwrap();
        let c = vec![q().from_i64(1), q().from_i64(1)];
        let SolutionSet::Solutions { particular, kernel } = solve(&a, &c).unwrap() else {
            panic!("solvable");
        };
        assert_eq!(a.mul_vec(&particular).unwrap(), c);
        assert_eq!(kernel.len(), 1);
        assert!(a
            .mul_vec(&kernel[0])
            .unwrap()
            .iter()
            .all(|e| q().is_zero(e)));
        // x0 = 1/3, x1 = 1/3, x2 = 0
        assert_eq!(
            particular[0],
            Elem::Rational(BigRational::new(1.into(), 3.into()))
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&ExactMatrix::identity(q(), 3)).is_empty());
        assert_eq!(kernel_basis(&ExactMatrix::zeros(q(), 1, 3)).len(), 3);
        let a = ExactMatrix::from_i64_rows(q(), &[[1, 1, 0]]).unwrap();
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|e| q().is_zero(e)));
        }
        let stacked = ExactMatrix::from_rows(q(), 3, k).unwrap();
        assert_eq!(rank(&stacked), 2);
    }

    #[test]
    fn shape_errors() {
        assert!(ExactMatrix::new(q(), 2, 2, vec![q().one()]).is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(ExactMatrix::new(f5, 1, 1, vec![Elem::Residue(5)]).is_err());
        assert!(ExactMatrix::new(f5, 1, 1, vec![q().one()]).is_err());
        let a = ExactMatrix::identity(q(), 2);
        let b = ExactMatrix::identity(q(), 3);
        assert!(a.mul(&b).is_err());
    }
}
