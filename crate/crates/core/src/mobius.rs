//! The graded Möbius algebra of a matroid: basis `y_F` indexed by flats,
//! `deg y_F = rank F`, and
//!
//! ```text
//! y_F · y_G = y_{F ∨ G}  if rank(F ∨ G) = rank F + rank G,  else 0.
//! ```
//!
//! Coefficients are rationals. `ω` is the (optionally weighted) sum of the
//! rank-one generators; its powers are assembled from single-step matrices.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::{Elem, ExactMatrix, FieldSpec, LinAlgError};
use crate::matroid::{FlatLattice, Matroid, MatroidError, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobiusError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{0:?} is not a flat")]
    NotAFlat(Vec<usize>),
    #[error("weight {index} is not positive")]
    WeightNotPositive { index: usize },
    #[error("expected {expected} weights (one per rank-one flat), got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("need 0 <= r <= r' <= {rank}, got r={r} r'={r_prime}")]
    BadRanks {
        r: usize,
        r_prime: usize,
        rank: usize,
    },
    #[error("degree-{degree} element needs {expected} coefficients, got {got}")]
    DegreeMismatch {
        degree: usize,
        expected: usize,
        got: usize,
    },
}

/// Element of a single graded piece: coefficients indexed by the rank-`degree`
/// flats in lattice order. Degrees above the matroid rank have no flats and
/// hence an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: usize,
    pub coeffs: Vec<BigRational>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Positive rational weights, one per rank-one flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaWeights {
    c: Vec<BigRational>,
}

impl OmegaWeights {
    pub fn new(c: Vec<BigRational>) -> Result<Self, MobiusError> {
        if let Some(index) = c.iter().position(|x| !x.is_positive()) {
            return Err(MobiusError::WeightNotPositive { index });
        }
        Ok(OmegaWeights { c })
    }

    pub fn unit(count: usize) -> Self {
        OmegaWeights {
            c: vec![BigRational::one(); count],
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_unit(&self) -> bool {
        self.c.iter().all(One::is_one)
    }
}

/// For each rank `r` and each rank-`r` flat `F` (by index): the pairs
/// `(atom index, index of F ∨ atom)` over atoms not in `F`.
type AtomJoins = Vec<Vec<Vec<(usize, usize)>>>;

pub struct MobiusAlgebra {
    matroid: Matroid,
    lattice: Arc<FlatLattice>,
    atom_joins: OnceLock<AtomJoins>,
}

impl MobiusAlgebra {
    pub fn build(matroid: &Matroid) -> Result<Self, MobiusError> {
        let lattice = matroid.flats()?;
        Ok(MobiusAlgebra {
            matroid: matroid.clone(),
            lattice,
            atom_joins: OnceLock::new(),
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Dimensions of the graded pieces: the Whitney numbers.
    pub fn dims(&self) -> Vec<usize> {
        self.lattice.whitney()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.lattice.level(degree).len()
    }

    pub fn zero(&self, degree: usize) -> GradedElement {
        GradedElement {
            degree,
            coeffs: vec![BigRational::zero(); self.dim(degree)],
        }
    }

    pub fn basis_element(&self, f: Subset) -> Result<GradedElement, MobiusError> {
        let (r, i) = self.locate(f)?;
        let mut e = self.zero(r);
        e.coeffs[i] = BigRational::one();
        Ok(e)
    }

    pub fn identity(&self) -> GradedElement {
        self.basis_element(self.lattice.level(0)[0])
            .expect("bottom flat exists")
    }

    fn locate(&self, f: Subset) -> Result<(usize, usize), MobiusError> {
        self.lattice
            .index_of(f)
            .ok_or_else(|| MobiusError::NotAFlat(f.to_vec()))
    }

    fn check(&self, u: &GradedElement) -> Result<(), MobiusError> {
        let expected = self.dim(u.degree);
        if u.coeffs.len() != expected {
            return Err(MobiusError::DegreeMismatch {
                degree: u.degree,
                expected,
                got: u.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn multiply_basis(&self, f: Subset, g: Subset) -> Result<GradedElement, MobiusError> {
        let (rf, _) = self.locate(f)?;
        let (rg, _) = self.locate(g)?;
        let mut out = self.zero(rf + rg);
        let join = self.matroid.join(f, g);
        if join.rank == rf + rg {
            let (_, idx) = self.locate(join.members)?;
            out.coeffs[idx] = BigRational::one();
        }
        Ok(out)
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(
        &self,
        u: &GradedElement,
        v: &GradedElement,
    ) -> Result<GradedElement, MobiusError> {
        self.check(u)?;
        self.check(v)?;
        let degree = u.degree + v.degree;
        let mut out = self.zero(degree);
        if degree > self.rank() {
            return Ok(out);
        }
        let left = self.lattice.level(u.degree);
        let right = self.lattice.level(v.degree);
        for (a, cu) in left.iter().zip(&u.coeffs).filter(|(_, c)| !c.is_zero()) {
            for (b, cv) in right.iter().zip(&v.coeffs).filter(|(_, c)| !c.is_zero()) {
                let join = self.matroid.join(*a, *b);
                if join.rank == degree {
                    let (_, idx) = self.locate(join.members)?;
                    out.coeffs[idx] += cu * cv;
                }
            }
        }
        Ok(out)
    }

    pub fn unit_weights(&self) -> OmegaWeights {
        OmegaWeights::unit(self.dim(1))
    }

    fn check_weights(&self, w: &OmegaWeights) -> Result<(), MobiusError> {
        let expected = self.dim(1);
        if w.c.len() != expected {
            return Err(MobiusError::WeightCount {
                expected,
                got: w.c.len(),
            });
        }
        Ok(())
    }

    /// `ω = Σ c_F y_F` over rank-one flats.
    pub fn omega(&self, w: &OmegaWeights) -> Result<GradedElement, MobiusError> {
        self.check_weights(w)?;
        Ok(GradedElement {
            degree: 1,
            coeffs: w.c.clone(),
        })
    }

    fn atom_joins(&self) -> &AtomJoins {
        self.atom_joins.get_or_init(|| {
            let atoms = self.lattice.level(1);
            self.lattice
                .levels()
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|&f| {
                            atoms
                                .iter()
                                .enumerate()
                                .filter(|(_, &a)| !a.is_subset_of(f))
                                .map(|(ai, &a)| {
                                    let g = self.matroid.join(f, a).members;
                                    let (_, gi) =
                                        self.lattice.index_of(g).expect("join of flats is a flat");
                                    (ai, gi)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Multiplication by `ω` from degree `r` to `r + 1`: entry `(G, F)` is
    /// the sum of `c_a` over atoms `a` with `F ∨ a = G`.
    pub fn omega_step_matrix(
        &self,
        r: usize,
        w: &OmegaWeights,
    ) -> Result<ExactMatrix, MobiusError> {
        self.check_weights(w)?;
        if r >= self.rank() {
            return Err(MobiusError::BadRanks {
                r,
                r_prime: r + 1,
                rank: self.rank(),
            });
        }
        let q = FieldSpec::Rationals;
        let rows = self.dim(r + 1);
        let cols = self.dim(r);
        let mut acc = vec![vec![BigRational::zero(); cols]; rows];
        for (fi, joins) in self.atom_joins()[r].iter().enumerate() {
            for &(ai, gi) in joins {
                acc[gi][fi] += &w.c[ai];
            }
        }
        let rows = acc
            .into_iter()
            .map(|row| row.into_iter().map(Elem::Rational).collect())
            .collect();
        Ok(ExactMatrix::from_rows(q, cols, rows)?)
    }

    /// Matrix of multiplication by `ω^(r' - r)`: rows are rank-`r'` flats,
    /// columns rank-`r` flats, both in lattice order.
    pub fn omega_power_matrix(
        &self,
        r: usize,
        r_prime: usize,
        w: &OmegaWeights,
    ) -> Result<ExactMatrix, MobiusError> {
        self.check_weights(w)?;
        if r > r_prime || r_prime > self.rank() {
            return Err(MobiusError::BadRanks {
                r,
                r_prime,
                rank: self.rank(),
            });
        }
        let mut acc = ExactMatrix::identity(FieldSpec::Rationals, self.dim(r));
        for k in r..r_prime {
            acc = self.omega_step_matrix(k, w)?.mul(&acc)?;
        }
        Ok(acc)
    }

    /// The matrix dump format for an `ω`-power matrix.
    pub fn matrix_json(&self, r: usize, r_prime: usize, m: &ExactMatrix) -> Value {
        let entries: Vec<Value> = (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|e| m.field().elem_json(e)).collect()))
            .collect();
        json!({
            "r": r,
            "r_prime": r_prime,
            "rows": (0..m.rows()).collect::<Vec<_>>(),
            "cols": (0..m.cols()).collect::<Vec<_>>(),
            "row_flats": self.lattice.level(r_prime).iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
            "col_flats": self.lattice.level(r).iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn dims_are_whitney_numbers() {
        let fano = MobiusAlgebra::build(&Matroid::fano()).unwrap();
        assert_eq!(fano.dims(), vec![1, 7, 7, 1]);
        let u = MobiusAlgebra::build(&Matroid::uniform(3, 7).unwrap()).unwrap();
        assert_eq!(u.dims(), vec![1, 7, 21, 1]);
        let point = MobiusAlgebra::build(&Matroid::uniform(1, 1).unwrap()).unwrap();
        assert_eq!(point.dims(), vec![1, 1]);
    }

    #[test]
    fn basis_products_in_fano() {
        let a = MobiusAlgebra::build(&Matroid::fano()).unwrap();
        let atoms = a.lattice().level(1).to_vec();
        let lines = a.lattice().level(2).to_vec();
        let bottom = a.lattice().level(0)[0];
        // identity
        for &f in atoms.iter().chain(&lines) {
            assert_eq!(
                a.multiply_basis(bottom, f).unwrap(),
                a.basis_element(f).unwrap()
            );
        }
        // two points give their line
        let p = a.multiply_basis(atoms[0], atoms[1]).unwrap();
        assert_eq!(p.degree, 2);
        let line = a.matroid().join(atoms[0], atoms[1]).members;
        assert_eq!(p, a.basis_element(line).unwrap());
        // two lines meet in rank 3, not 4
        let z = a.multiply_basis(lines[0], lines[1]).unwrap();
        assert_eq!(z.degree, 4);
        assert!(z.coeffs.is_empty());
        assert!(matches!(
            a.multiply_basis(Subset::from_bits(0b11), atoms[0]),
            Err(MobiusError::NotAFlat(_))
        ));
    }

    #[test]
    fn omega_times_point_in_fano() {
        let a = MobiusAlgebra::build(&Matroid::fano()).unwrap();
        let w = a.unit_weights();
        let omega = a.omega(&w).unwrap();
        assert_eq!(omega.coeffs, vec![q(1); 7]);
        let p = a.lattice().level(1)[0];
        let prod = a.multiply(&omega, &a.basis_element(p).unwrap()).unwrap();
        for (line, c) in a.lattice().level(2).iter().zip(&prod.coeffs) {
            let expected = if p.is_subset_of(*line) { q(2) } else { q(0) };
            assert_eq!(c, &expected);
        }
        let id = a.identity();
        assert_eq!(a.multiply(&id, &prod).unwrap(), prod);
        let top = a.basis_element(Subset::full(7)).unwrap();
        assert!(a.multiply(&top, &omega).unwrap().coeffs.is_empty());
    }

    #[test]
    fn weights_validation() {
        assert_eq!(
            OmegaWeights::new(vec![q(1), q(0)]).unwrap_err(),
            MobiusError::WeightNotPositive { index: 1 }
        );
        assert!(OmegaWeights::new(vec![q(-2)]).is_err());
        let a = MobiusAlgebra::build(&Matroid::fano()).unwrap();
        let w: Vec<BigRational> = (1..=7).map(q).collect();
        let omega = a.omega(&OmegaWeights::new(w.clone()).unwrap()).unwrap();
        assert_eq!(omega.coeffs, w);
        assert!(matches!(
            a.omega(&OmegaWeights::unit(3)),
            Err(MobiusError::WeightCount { .. })
        ));
    }

    #[test]
    fn omega_power_matrices_in_fano() {
        let a = MobiusAlgebra::build(&Matroid::fano()).unwrap();
        let w = a.unit_weights();
        let qf = FieldSpec::Rationals;
        for r in 0..=3 {
            assert_eq!(
                a.omega_power_matrix(r, r, &w).unwrap(),
                ExactMatrix::identity(qf, a.dim(r))
            );
        }
        let m01 = a.omega_power_matrix(0, 1, &w).unwrap();
        assert_eq!(m01, ExactMatrix::from_i64_rows(qf, &[[1i64]; 7]).unwrap());
        let m12 = a.omega_power_matrix(1, 2, &w).unwrap();
        let atoms = a.lattice().level(1);
        let lines = a.lattice().level(2);
        for (i, l) in lines.iter().enumerate() {
            for (j, p) in atoms.iter().enumerate() {
                let expected = if p.is_subset_of(*l) { 2 } else { 0 };
                assert_eq!(m12.get(i, j), &qf.from_i64(expected));
            }
        }
        assert!(matches!(
            a.omega_power_matrix(2, 1, &w),
            Err(MobiusError::BadRanks { .. })
        ));
        assert!(matches!(
            a.omega_power_matrix(1, 4, &w),
            Err(MobiusError::BadRanks { .. })
        ));
    }

    #[test]
    fn matrix_dump_shape() {
        let a = MobiusAlgebra::build(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let w = a.unit_weights();
        let m = a.omega_power_matrix(0, 1, &w).unwrap();
        let v = a.matrix_json(0, 1, &m);
        assert_eq!(v["rows"], json!([0, 1, 2]));
        assert_eq!(v["cols"], json!([0]));
        assert_eq!(v["entries"], json!([[1], [1], [1]]));
    }
}
