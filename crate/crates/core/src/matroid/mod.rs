//! Loopless matroids given by rank oracles: linear realizations, rank-3
//! line configurations, uniform matroids, the named Fano and non-Pappus
//! examples, and explicit rank tables. Flats, closures, circuits and
//! minors are all computed from the rank function.

mod axioms;
pub mod json;
mod lattice;
mod minor;
mod subset;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::exactlin::{rank, ExactMatrix, FieldSpec, LinAlgError};

pub use axioms::{check_axioms, AxiomMode, AxiomReport, AxiomViolation, EXHAUSTIVE_MAX};
pub use lattice::{Flat, FlatLattice, ENUMERATION_MAX};
pub use subset::{subsets_of_size, Subset, MAX_GROUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("row {row} of the realization is zero (a loop)")]
    LoopDetected { row: usize },
    #[error("invalid line configuration: {0}")]
    InvalidLines(String),
    #[error("rank function violates the matroid axioms ({count} violations, first: {first})")]
    AxiomViolation { count: usize, first: String },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown named matroid `{0}`")]
    UnknownName(String),
    #[error("ground set of size {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0:?} is not a flat")]
    NotAFlat(Vec<usize>),
    #[error("cannot contract the full ground set")]
    FullFlat,
    #[error("element {element} outside a ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Anything that assigns a rank to subsets of a finite ground set.
///
/// Implemented by [`Matroid`] and by unvalidated [`RankTable`]s, so the
/// axiom checker can report on functions that are not matroids.
pub trait RankFunction {
    fn ground_size(&self) -> usize;
    fn rank_of(&self, s: Subset) -> usize;
}

/// A rank function tabulated on all `2^n` subsets, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    n: usize,
    ranks: Vec<usize>,
}

impl RankTable {
    pub fn new(n: usize, ranks: Vec<usize>) -> Result<Self, MatroidError> {
        if n > EXHAUSTIVE_MAX {
            return Err(MatroidError::TooLarge {
                n,
                max: EXHAUSTIVE_MAX,
            });
        }
        if ranks.len() != 1 << n {
            return Err(MatroidError::BadParams(format!(
                "rank table for n={n} needs {} entries, got {}",
                1usize << n,
                ranks.len()
            )));
        }
        Ok(RankTable { n, ranks })
    }

    /// Tabulates any rank function with a small ground set.
    pub fn tabulate(rf: &(impl RankFunction + ?Sized)) -> Result<Self, MatroidError> {
        let n = rf.ground_size();
        if n > EXHAUSTIVE_MAX {
            return Err(MatroidError::TooLarge {
                n,
                max: EXHAUSTIVE_MAX,
            });
        }
        let ranks = (0..1u64 << n)
            .map(|b| rf.rank_of(Subset::from_bits(b)))
            .collect();
        Ok(RankTable { n, ranks })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

impl RankFunction for RankTable {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank_of(&self, s: Subset) -> usize {
        self.ranks[s.bits() as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Linear,
    Lines,
    Uniform,
    Named(String),
    Explicit,
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidKind::Linear => write!(f, "linear"),
            MatroidKind::Lines => write!(f, "lines"),
            MatroidKind::Uniform => write!(f, "uniform"),
            MatroidKind::Named(name) => write!(f, "named:{name}"),
            MatroidKind::Explicit => write!(f, "explicit"),
        }
    }
}

enum Oracle {
    /// Rank of the selected rows of the realization.
    Matrix,
    Uniform(usize),
    Lines(Vec<Subset>),
    Table(RankTable),
    /// `rank(S) = base.rank(lift(S) ∪ contracted) - offset`.
    Minor {
        base: Matroid,
        lift: Vec<usize>,
        contracted: Subset,
        offset: usize,
    },
}

struct Inner {
    n: usize,
    rank_total: usize,
    kind: MatroidKind,
    oracle: Oracle,
    realization: Option<ExactMatrix>,
    cache: RwLock<HashMap<Subset, usize>>,
    lattice: OnceLock<Arc<FlatLattice>>,
}

/// A loopless matroid. Cloning is cheap; clones share the rank cache and
/// the flat lattice once computed.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.inner.n)
            .field("rank", &self.inner.rank_total)
            .field("kind", &self.inner.kind)
            .finish()
    }
}

/// Lines of the non-Pappus configuration: the Pappus configuration on
/// `{0..8}` with its middle line `{3, 4, 5}` removed.
pub const NON_PAPPUS_LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [6, 7, 8],
    [0, 4, 6],
    [0, 5, 7],
    [1, 3, 6],
    [1, 5, 8],
    [2, 3, 7],
    [2, 4, 8],
];

/// The seven points of the projective plane over 𝔽₂.
pub const FANO_POINTS: [[i64; 3]; 7] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [0, 1, 1],
    [1, 0, 1],
    [1, 1, 1],
];

impl Matroid {
    fn from_parts(
        n: usize,
        kind: MatroidKind,
        oracle: Oracle,
        realization: Option<ExactMatrix>,
    ) -> Self {
        let mut inner = Inner {
            n,
            rank_total: 0,
            kind,
            oracle,
            realization,
            cache: RwLock::new(HashMap::new()),
            lattice: OnceLock::new(),
        };
        let probe = Matroid {
            inner: Arc::new(inner),
        };
        let total = probe.rank(Subset::full(n));
        inner = Arc::into_inner(probe.inner).expect("probe handle is unique");
        inner.rank_total = total;
        Matroid {
            inner: Arc::new(inner),
        }
    }

    /// Matroid of the rows of `points` (homogeneous coordinates).
    pub fn linear(points: ExactMatrix) -> Result<Self, MatroidError> {
        if points.cols() == 0 {
            return Err(MatroidError::BadParams(
                "realization needs at least one column".into(),
            ));
        }
        if points.rows() > MAX_GROUND {
            return Err(MatroidError::TooLarge {
                n: points.rows(),
                max: MAX_GROUND,
            });
        }
        if let Some(row) = (0..points.rows()).find(|&i| points.row_is_zero(i)) {
            return Err(MatroidError::LoopDetected { row });
        }
        Ok(Self::from_parts(
            points.rows(),
            MatroidKind::Linear,
            Oracle::Matrix,
            Some(points),
        ))
    }

    /// Rank-3 matroid (or rank 2, if everything is on one line) in which the
    /// listed lines are the only dependent triples.
    pub fn from_lines(n: usize, lines: &[Vec<usize>]) -> Result<Self, MatroidError> {
        if !(3..=MAX_GROUND).contains(&n) {
            return Err(MatroidError::BadParams(format!(
                "line configurations need 3 <= n <= {MAX_GROUND}, got {n}"
            )));
        }
        let mut sets = Vec::with_capacity(lines.len());
        for line in lines {
            let set = Subset::from_indices(n, line)
                .map_err(|e| MatroidError::InvalidLines(e.to_string()))?;
            if set.len() != line.len() {
                return Err(MatroidError::InvalidLines(format!(
                    "line {line:?} repeats a point"
                )));
            }
            if set.len() < 3 {
                return Err(MatroidError::InvalidLines(format!(
                    "line {line:?} has fewer than 3 points"
                )));
            }
            sets.push(set);
        }
        for (a, &la) in sets.iter().enumerate() {
            for &lb in &sets[a + 1..] {
                if la.intersection(lb).len() >= 2 {
                    return Err(MatroidError::InvalidLines(format!(
                        "lines {:?} and {:?} share two or more points",
                        la.to_vec(),
                        lb.to_vec()
                    )));
                }
            }
        }
        let m = Self::from_parts(n, MatroidKind::Lines, Oracle::Lines(sets), None);
        m.require_axioms()?;
        Ok(m)
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        if r < 1 || r > n || n > MAX_GROUND {
            return Err(MatroidError::BadParams(format!(
                "uniform matroid needs 1 <= r <= n <= {MAX_GROUND}, got r={r} n={n}"
            )));
        }
        Ok(Self::from_parts(
            n,
            MatroidKind::Uniform,
            Oracle::Uniform(r),
            None,
        ))
    }

    pub fn fano() -> Self {
        let f2 = FieldSpec::prime(2).expect("2 is prime");
        let points = ExactMatrix::from_i64_rows(f2, &FANO_POINTS).expect("static matrix");
        Self::from_parts(
            7,
            MatroidKind::Named("fano".into()),
            Oracle::Matrix,
            Some(points),
        )
    }

    pub fn non_pappus() -> Self {
        let lines: Vec<Vec<usize>> = NON_PAPPUS_LINES.iter().map(|l| l.to_vec()).collect();
        let m = Self::from_lines(9, &lines).expect("non-Pappus configuration is a matroid");
        let Ok(Inner { oracle, .. }) = Arc::try_unwrap(m.inner) else {
            unreachable!("fresh matroid has a single handle")
        };
        Self::from_parts(9, MatroidKind::Named("non_pappus".into()), oracle, None)
    }

    pub fn named(name: &str) -> Result<Self, MatroidError> {
        match name {
            "fano" => Ok(Self::fano()),
            "non_pappus" => Ok(Self::non_pappus()),
            other => Err(MatroidError::UnknownName(other.to_string())),
        }
    }

    /// Matroid from a full rank table; rejected unless it passes the
    /// exhaustive axiom check and is loopless.
    pub fn from_rank_table(table: RankTable) -> Result<Self, MatroidError> {
        let n = table.n;
        let m = Self::from_parts(n, MatroidKind::Explicit, Oracle::Table(table), None);
        m.require_axioms()?;
        Ok(m)
    }

    fn require_axioms(&self) -> Result<(), MatroidError> {
        let mode = if self.inner.n <= EXHAUSTIVE_MAX {
            AxiomMode::Exhaustive
        } else {
            AxiomMode::Randomized {
                trials: 20_000,
                seed: 0,
            }
        };
        let report = check_axioms(self, mode)?;
        match report.violations.first() {
            None => Ok(()),
            Some(first) => Err(MatroidError::AxiomViolation {
                count: report.violations.len(),
                first: first.to_string(),
            }),
        }
    }

    pub(crate) fn minor(base: &Matroid, lift: Vec<usize>, contracted: Subset) -> Self {
        let offset = base.rank(contracted);
        let oracle = Oracle::Minor {
            base: base.clone(),
            lift: lift.clone(),
            contracted,
            offset,
        };
        Self::from_parts(lift.len(), MatroidKind::Explicit, oracle, None)
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn rank_total(&self) -> usize {
        self.inner.rank_total
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.inner.kind
    }

    pub fn realization(&self) -> Option<&ExactMatrix> {
        self.inner.realization.as_ref()
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.inner.n)
    }

    pub fn rank(&self, s: Subset) -> usize {
        debug_assert!(
            s.is_subset_of(self.ground()),
            "{s:?} outside ground set of size {}",
            self.inner.n
        );
        match &self.inner.oracle {
            Oracle::Uniform(r) => s.len().min(*r),
            Oracle::Lines(lines) => match s.len() {
                k if k <= 2 => k,
                _ if lines.iter().any(|&l| s.is_subset_of(l)) => 2,
                _ => 3,
            },
            Oracle::Table(t) => t.rank_of(s),
            Oracle::Minor {
                base,
                lift,
                contracted,
                offset,
            } => {
                let lifted = s.iter().fold(*contracted, |acc, i| acc.with(lift[i]));
                base.rank(lifted) - offset
            }
            Oracle::Matrix => {
                if s.len() <= 1 {
                    return s.len();
                }
                if let Some(&r) = self
                    .inner
                    .cache
                    .read()
                    .expect("rank cache poisoned")
                    .get(&s)
                {
                    return r;
                }
                let p = self
                    .inner
                    .realization
                    .as_ref()
                    .expect("linear matroid has a realization");
                let r = rank(&p.select_rows(&s.to_vec()));
                self.inner
                    .cache
                    .write()
                    .expect("rank cache poisoned")
                    .insert(s, r);
                r
            }
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }

    /// `S` together with every element whose addition keeps the rank.
    pub fn closure(&self, s: Subset) -> Flat {
        let r = self.rank(s);
        let members = (0..self.n()).filter(|&i| !s.contains(i)).fold(s, |acc, i| {
            if self.rank(s.with(i)) == r {
                acc.with(i)
            } else {
                acc
            }
        });
        Flat { members, rank: r }
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s).members == s
    }

    /// Smallest flat containing both arguments.
    pub fn join(&self, a: Subset, b: Subset) -> Flat {
        self.closure(a.union(b))
    }

    /// The flat lattice, enumerated on first use and cached.
    pub fn flats(&self) -> Result<Arc<FlatLattice>, MatroidError> {
        if let Some(l) = self.inner.lattice.get() {
            return Ok(Arc::clone(l));
        }
        let lattice = Arc::new(FlatLattice::enumerate(self)?);
        Ok(Arc::clone(self.inner.lattice.get_or_init(|| lattice)))
    }

    /// Whitney numbers of the second kind: counts of flats per rank.
    pub fn whitney(&self) -> Result<Vec<usize>, MatroidError> {
        Ok(self.flats()?.whitney())
    }

    /// All minimal dependent sets, ordered by size then bitmask.
    pub fn circuits(&self) -> Result<Vec<Subset>, MatroidError> {
        let n = self.n();
        if n > ENUMERATION_MAX {
            return Err(MatroidError::TooLarge {
                n,
                max: ENUMERATION_MAX,
            });
        }
        let mut out = Vec::new();
        for k in 1..=(self.rank_total() + 1).min(n) {
            for c in subsets_of_size(n, k) {
                if self.rank(c) == k - 1 && c.iter().all(|i| self.is_independent(c.without(i))) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}

impl RankFunction for Matroid {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn rank_of(&self, s: Subset) -> usize {
        self.rank(s)
    }
}
