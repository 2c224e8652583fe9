//! Checking a rank function against the loopless-matroid axioms:
//! `rank(∅) = 0`, `rank({i}) = 1`, monotonicity and submodularity.
//!
//! Exhaustive mode tabulates the function and checks the local forms:
//! single-element steps increase the rank by 0 or 1, and
//! `rank(S+i) + rank(S+j) >= rank(S+i+j) + rank(S)` for all `S, i, j`.
//! For integer-valued functions these are equivalent to the global
//! axioms. Randomized mode samples the global inequalities directly.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{MatroidError, RankFunction, RankTable, Subset};

/// Largest ground set for exhaustive checking.
pub const EXHAUSTIVE_MAX: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    Exhaustive,
    Randomized { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptyNotZero {
        rank: usize,
    },
    Loop {
        element: usize,
        rank: usize,
    },
    Monotonicity {
        set: Subset,
        superset: Subset,
        rank_set: usize,
        rank_superset: usize,
    },
    /// Adding one element raised the rank by more than one.
    UnitIncrease {
        set: Subset,
        element: usize,
        increase: usize,
    },
    Submodularity {
        a: Subset,
        b: Subset,
        rank_a: usize,
        rank_b: usize,
        rank_union: usize,
        rank_intersection: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::EmptyNotZero { rank } => write!(f, "rank(∅) = {rank}"),
            AxiomViolation::Loop { element, rank } => write!(f, "rank({{{element}}}) = {rank}"),
            AxiomViolation::Monotonicity {
                set,
                superset,
                rank_set,
                rank_superset,
            } => write!(
                f,
                "rank({set:?}) = {rank_set} > rank({superset:?}) = {rank_superset}"
            ),
            AxiomViolation::UnitIncrease {
                set,
                element,
                increase,
            } => {
                write!(
                    f,
                    "adding {element} to {set:?} raises the rank by {increase}"
                )
            }
            AxiomViolation::Submodularity {
                a,
                b,
                rank_a,
                rank_b,
                rank_union,
                rank_intersection,
            } => write!(
                f,
                "rank({a:?} ∪ {b:?}) = {rank_union} > {rank_a} + {rank_b} - {rank_intersection}"
            ),
        }
    }
}

impl AxiomViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::EmptyNotZero { .. } => "normalization",
            AxiomViolation::Loop { .. } => "loopless",
            AxiomViolation::Monotonicity { .. } => "monotonicity",
            AxiomViolation::UnitIncrease { .. } => "unit_increase",
            AxiomViolation::Submodularity { .. } => "submodularity",
        }
    }

    pub fn to_json(&self) -> Value {
        let set = |s: &Subset| json!(s.to_vec());
        let detail = match self {
            AxiomViolation::EmptyNotZero { rank } => json!({ "rank": rank }),
            AxiomViolation::Loop { element, rank } => json!({ "element": element, "rank": rank }),
            AxiomViolation::Monotonicity {
                set: s,
                superset,
                rank_set,
                rank_superset,
            } => json!({
                "set": set(s), "superset": set(superset),
                "rank_set": rank_set, "rank_superset": rank_superset,
            }),
            AxiomViolation::UnitIncrease {
                set: s,
                element,
                increase,
            } => json!({
                "set": set(s), "element": element, "increase": increase,
            }),
            AxiomViolation::Submodularity {
                a,
                b,
                rank_a,
                rank_b,
                rank_union,
                rank_intersection,
            } => json!({
                "a": set(a), "b": set(b), "rank_a": rank_a, "rank_b": rank_b,
                "rank_union": rank_union, "rank_intersection": rank_intersection,
            }),
        };
        json!({ "axiom": self.axiom(), "message": self.to_string(), "detail": detail })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub mode: AxiomMode,
    /// Number of inequality instances evaluated.
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mode = match self.mode {
            AxiomMode::Exhaustive => json!("exhaustive"),
            AxiomMode::Randomized { trials, seed } => {
                json!({ "randomized": { "trials": trials, "seed": seed } })
            }
        };
        json!({
            "mode": mode,
            "pass": self.passed(),
            "checked": self.checked,
            "violations": self.violations.iter().map(AxiomViolation::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn check_axioms<R: RankFunction + ?Sized>(
    rf: &R,
    mode: AxiomMode,
) -> Result<AxiomReport, MatroidError> {
    match mode {
        AxiomMode::Exhaustive => exhaustive(rf),
        AxiomMode::Randomized { trials, seed } => Ok(randomized(rf, trials, seed)),
    }
}

fn base_checks<R: RankFunction + ?Sized>(rf: &R, violations: &mut Vec<AxiomViolation>) -> usize {
    let r0 = rf.rank_of(Subset::empty());
    if r0 != 0 {
        violations.push(AxiomViolation::EmptyNotZero { rank: r0 });
    }
    let n = rf.ground_size();
    for i in 0..n {
        let r = rf.rank_of(Subset::singleton(i));
        if r != 1 {
            violations.push(AxiomViolation::Loop {
                element: i,
                rank: r,
            });
        }
    }
    n + 1
}

fn exhaustive<R: RankFunction + ?Sized>(rf: &R) -> Result<AxiomReport, MatroidError> {
    let table = RankTable::tabulate(rf)?;
    let n = table.ground_size();
    let rk = |s: Subset| table.rank_of(s);
    let mut violations = Vec::new();
    let mut checked = base_checks(&table, &mut violations);
    for bits in 0..1u64 << n {
        let s = Subset::from_bits(bits);
        let rs = rk(s);
        let outside: Vec<usize> = (0..n).filter(|&i| !s.contains(i)).collect();
        for (k, &i) in outside.iter().enumerate() {
            let si = s.with(i);
            let rsi = rk(si);
            checked += 1;
            if rsi < rs {
                violations.push(AxiomViolation::Monotonicity {
                    set: s,
                    superset: si,
                    rank_set: rs,
                    rank_superset: rsi,
                });
            } else if rsi > rs + 1 {
                violations.push(AxiomViolation::UnitIncrease {
                    set: s,
                    element: i,
                    increase: rsi - rs,
                });
            }
            for &j in &outside[k + 1..] {
                let sj = s.with(j);
                let sij = si.with(j);
                checked += 1;
                if rsi + rk(sj) < rk(sij) + rs {
                    violations.push(AxiomViolation::Submodularity {
                        a: si,
                        b: sj,
                        rank_a: rsi,
                        rank_b: rk(sj),
                        rank_union: rk(sij),
                        rank_intersection: rs,
                    });
                }
            }
        }
    }
    Ok(AxiomReport {
        mode: AxiomMode::Exhaustive,
        checked,
        violations,
    })
}

fn randomized<R: RankFunction + ?Sized>(rf: &R, trials: usize, seed: u64) -> AxiomReport {
    let n = rf.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = if n == 0 { 0 } else { Subset::full(n).bits() };
    let mut violations = Vec::new();
    let mut checked = base_checks(rf, &mut violations);
    for _ in 0..trials {
        let a = Subset::from_bits(rng.gen::<u64>() & full);
        let b = Subset::from_bits(rng.gen::<u64>() & full);
        let (ra, rb) = (rf.rank_of(a), rf.rank_of(b));
        let (ru, ri) = (rf.rank_of(a.union(b)), rf.rank_of(a.intersection(b)));
        checked += 2;
        if ru + ri > ra + rb {
            violations.push(AxiomViolation::Submodularity {
                a,
                b,
                rank_a: ra,
                rank_b: rb,
                rank_union: ru,
                rank_intersection: ri,
            });
        }
        let sub = a.intersection(b);
        if ri > ra {
            violations.push(AxiomViolation::Monotonicity {
                set: sub,
                superset: a,
                rank_set: ri,
                rank_superset: ra,
            });
        }
    }
    AxiomReport {
        mode: AxiomMode::Randomized { trials, seed },
        checked,
        violations,
    }
}
