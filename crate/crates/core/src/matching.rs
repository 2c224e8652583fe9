//! Injective flat matchings and the checks around them.
//!
//! For `r <= r'` with `r + r' <= rank M`, multiplication by `ω^(r'-r)` from
//! the rank-`r` to the rank-`r'` piece of the Möbius algebra is injective,
//! and the nonzero pattern of that matrix (the containment relation between
//! flats) then carries a matching saturating every rank-`r` flat. This
//! module decides injectivity by exact rank, extracts the matching with
//! Hopcroft–Karp, and cross-checks existence with Hall's condition.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::rank;
use crate::matroid::{FlatLattice, Matroid, MatroidError, Subset};
use crate::mobius::{MobiusAlgebra, MobiusError, OmegaWeights};

/// Largest left side accepted by the Hall-condition oracle.
pub const HALL_MAX: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("r={r}, r'={r_prime} violates r + r' <= rank = {rank}; use the exploratory scope")]
    RangeViolation {
        r: usize,
        r_prime: usize,
        rank: usize,
    },
    #[error("need r <= r' <= rank = {rank}, got r={r} r'={r_prime}")]
    BadRanks {
        r: usize,
        r_prime: usize,
        rank: usize,
    },
    #[error("left side of size {size} exceeds the limit {max}")]
    TooLarge { size: usize, max: usize },
}

/// Whether a computation is inside the range where the theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Requires `r + r' <= rank`; failures are alarms.
    Theorem,
    /// Any `r <= r' <= rank`; verdicts outside the range are informational.
    Exploratory,
}

fn check_ranks(
    rank_m: usize,
    r: usize,
    r_prime: usize,
    scope: Scope,
) -> Result<bool, MatchingError> {
    if r > r_prime || r_prime > rank_m {
        return Err(MatchingError::BadRanks {
            r,
            r_prime,
            rank: rank_m,
        });
    }
    let inside = r + r_prime <= rank_m;
    if !inside && scope == Scope::Theorem {
        return Err(MatchingError::RangeViolation {
            r,
            r_prime,
            rank: rank_m,
        });
    }
    Ok(inside)
}

/// Bipartite graph between rank-`r` and rank-`r'` flats, with an edge
/// whenever the left flat is contained in the right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentGraph {
    pub r: usize,
    pub r_prime: usize,
    pub left: Vec<Subset>,
    pub right: Vec<Subset>,
    /// Right neighbours of each left vertex, ascending.
    pub adj: Vec<Vec<usize>>,
}

impl ContainmentGraph {
    pub fn from_lattice(lattice: &FlatLattice, r: usize, r_prime: usize) -> Self {
        let left = lattice.level(r).to_vec();
        let right = lattice.level(r_prime).to_vec();
        let adj = left
            .iter()
            .map(|&f| {
                (0..right.len())
                    .filter(|&j| f.is_subset_of(right[j]))
                    .collect()
            })
            .collect();
        ContainmentGraph {
            r,
            r_prime,
            left,
            right,
            adj,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// Maximum matching by Hopcroft–Karp. Left vertices are scanned in index
/// order and neighbours in ascending order, so the result is deterministic.
/// Returns the right partner of every left vertex.
pub fn maximum_matching(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let n = adj.len();
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; right_count];
    let mut dist = vec![0usize; n];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        dist: &mut [usize],
        match_left: &mut [usize],
        match_right: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let w = match_right[v];
            if w == FREE
                || (dist[w] == dist[u] + 1 && augment(w, adj, dist, match_left, match_right))
            {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        dist[u] = FREE;
        false
    }

    loop {
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_left[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = FREE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    FREE => found = true,
                    w if dist[w] == FREE => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut progress = false;
        for u in 0..n {
            if match_left[u] == FREE
                && augment(u, adj, &mut dist, &mut match_left, &mut match_right)
            {
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    match_left
        .into_iter()
        .map(|v| (v != FREE).then_some(v))
        .collect()
}

/// Decides whether a matching saturating the left side exists by checking
/// `|N(S)| >= |S|` for every subset `S` of the left side.
pub fn brute_force_matching_exists(g: &ContainmentGraph) -> Result<bool, MatchingError> {
    let n = g.left.len();
    if n > HALL_MAX {
        return Err(MatchingError::TooLarge {
            size: n,
            max: HALL_MAX,
        });
    }
    let words = g.right.len().div_ceil(64).max(1);
    let neighbourhoods: Vec<Vec<u64>> = g
        .adj
        .iter()
        .map(|nbrs| {
            let mut bits = vec![0u64; words];
            for &v in nbrs {
                bits[v / 64] |= 1 << (v % 64);
            }
            bits
        })
        .collect();

    // Depth-first over subsets, carrying the union of neighbourhoods.
    fn hall(i: usize, size: usize, union: &[u64], nb: &[Vec<u64>]) -> bool {
        if i == nb.len() {
            return true;
        }
        if !hall(i + 1, size, union, nb) {
            return false;
        }
        let grown: Vec<u64> = union.iter().zip(&nb[i]).map(|(a, b)| a | b).collect();
        let covered: u32 = grown.iter().map(|w| w.count_ones()).sum();
        (covered as usize) > size && hall(i + 1, size + 1, &grown, nb)
    }
    Ok(hall(0, 0, &vec![0u64; words], &neighbourhoods))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub r: usize,
    pub r_prime: usize,
    pub left: Vec<Subset>,
    pub right: Vec<Subset>,
    pub adj: Vec<Vec<usize>>,
    pub assignment: Vec<Option<usize>>,
    pub complete: bool,
    pub inside_theorem: bool,
}

impl MatchingResult {
    /// Matched `(F, ι(F))` pairs in left order.
    pub fn pairs(&self) -> Vec<(Subset, Subset)> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| (self.left[i], self.right[j])))
            .collect()
    }

    /// An incomplete matching inside the theorem range.
    pub fn is_alarm(&self) -> bool {
        self.inside_theorem && !self.complete
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs()
            .iter()
            .map(|(a, b)| json!([a.to_vec(), b.to_vec()]))
            .collect();
        json!({
            "r": self.r,
            "r_prime": self.r_prime,
            "complete": self.complete,
            "inside_theorem": self.inside_theorem,
            "pairs": pairs,
        })
    }

    /// Graphviz rendering: flats as nodes in two ranks, containment edges
    /// dashed, matched edges bold.
    pub fn to_dot(&self) -> String {
        let label = |s: &Subset| {
            let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        let mut out = String::new();
        let _ = writeln!(out, "graph matching {{");
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [shape=box];");
        let _ = writeln!(out, "  subgraph cluster_left {{");
        let _ = writeln!(out, "    label=\"rank {}\";", self.r);
        for (i, f) in self.left.iter().enumerate() {
            let _ = writeln!(out, "    l{i} [label=\"{}\"];", label(f));
        }
        let _ = writeln!(out, "  }}");
        let _ = writeln!(out, "  subgraph cluster_right {{");
        let _ = writeln!(out, "    label=\"rank {}\";", self.r_prime);
        for (j, f) in self.right.iter().enumerate() {
            let _ = writeln!(out, "    r{j} [label=\"{}\"];", label(f));
        }
        let _ = writeln!(out, "  }}");
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if self.assignment[i] == Some(j) {
                    let _ = writeln!(out, "  l{i} -- r{j} [style=bold, penwidth=3];");
                } else {
                    let _ = writeln!(out, "  l{i} -- r{j} [style=dashed, color=gray];");
                }
            }
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// Maximum containment-respecting matching from rank-`r` to rank-`r'` flats.
pub fn extract_matching(
    m: &Matroid,
    r: usize,
    r_prime: usize,
    scope: Scope,
) -> Result<MatchingResult, MatchingError> {
    let lattice = m.flats()?;
    let inside_theorem = check_ranks(lattice.rank(), r, r_prime, scope)?;
    let g = ContainmentGraph::from_lattice(&lattice, r, r_prime);
    let assignment = maximum_matching(&g.adj, g.right.len());
    let complete = assignment.iter().all(Option::is_some);
    Ok(MatchingResult {
        r,
        r_prime,
        left: g.left,
        right: g.right,
        adj: g.adj,
        assignment,
        complete,
        inside_theorem,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityVerdict {
    pub r: usize,
    pub r_prime: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub unit_weights: bool,
    pub inside_theorem: bool,
}

impl InjectivityVerdict {
    pub fn injective(&self) -> bool {
        self.rank == self.cols
    }

    /// Non-injective with unit weights inside the theorem range.
    pub fn is_alarm(&self) -> bool {
        !self.injective() && self.unit_weights && self.inside_theorem
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "r_prime": self.r_prime,
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
            "injective": self.injective(),
            "unit_weights": self.unit_weights,
            "inside_theorem": self.inside_theorem,
        })
    }
}

/// Exact rank of the `ω^(r'-r)` matrix against the number of rank-`r` flats.
pub fn verify_injectivity(
    algebra: &MobiusAlgebra,
    r: usize,
    r_prime: usize,
    w: &OmegaWeights,
    scope: Scope,
) -> Result<InjectivityVerdict, MatchingError> {
    let inside_theorem = check_ranks(algebra.rank(), r, r_prime, scope)?;
    let m = algebra.omega_power_matrix(r, r_prime, w)?;
    Ok(InjectivityVerdict {
        r,
        r_prime,
        rows: m.rows(),
        cols: m.cols(),
        rank: rank(&m),
        unit_weights: w.is_unit(),
        inside_theorem,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopHeavyPair {
    pub r: usize,
    pub r_prime: usize,
    pub lower: usize,
    pub upper: usize,
}

impl TopHeavyPair {
    pub fn holds(&self) -> bool {
        self.lower <= self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopHeavyReport {
    pub whitney: Vec<usize>,
    /// Every `r <= r'` with `r + r' <= rank`.
    pub pairs: Vec<TopHeavyPair>,
    /// `|F_0|, |F_1|, ..` up to the last `k` with `(k-1) + k <= rank`.
    pub increasing_chain: Vec<usize>,
}

impl TopHeavyReport {
    pub fn violations(&self) -> Vec<&TopHeavyPair> {
        self.pairs.iter().filter(|p| !p.holds()).collect()
    }

    pub fn chain_increasing(&self) -> bool {
        self.increasing_chain.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty() && self.chain_increasing()
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|p| json!({"r": p.r, "r_prime": p.r_prime, "lower": p.lower, "upper": p.upper, "holds": p.holds()}))
            .collect();
        json!({
            "whitney": self.whitney,
            "pairs": pairs,
            "increasing_chain": self.increasing_chain,
            "chain_increasing": self.chain_increasing(),
            "pass": self.passed(),
        })
    }
}

pub fn top_heavy_report(m: &Matroid) -> Result<TopHeavyReport, MatchingError> {
    let whitney = m.whitney()?;
    let d = whitney.len() - 1;
    let pairs = (0..=d)
        .flat_map(|r| (r..=d.saturating_sub(r)).map(move |rp| (r, rp)))
        .map(|(r, r_prime)| TopHeavyPair {
            r,
            r_prime,
            lower: whitney[r],
            upper: whitney[r_prime],
        })
        .collect();
    let chain_len = d.div_ceil(2) + 1;
    let increasing_chain = whitney[..chain_len.min(whitney.len())].to_vec();
    Ok(TopHeavyReport {
        whitney,
        pairs,
        increasing_chain,
    })
}

/// One `(r, r')` row of the full verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub injectivity: InjectivityVerdict,
    pub matching: MatchingResult,
    /// Hall-condition verdict, computed when the left side is small enough.
    pub hall: Option<bool>,
}

impl SuiteEntry {
    pub fn alarms(&self) -> Vec<String> {
        let (r, rp) = (self.injectivity.r, self.injectivity.r_prime);
        let mut out = Vec::new();
        if self.injectivity.is_alarm() {
            out.push(format!(
                "omega^{} from rank {r} to rank {rp} has rank {} < {}",
                rp - r,
                self.injectivity.rank,
                self.injectivity.cols
            ));
        }
        if self.matching.is_alarm() {
            out.push(format!("no complete matching from rank {r} to rank {rp}"));
        }
        if self.hall.is_some_and(|h| h != self.matching.complete) {
            out.push(format!(
                "Hall oracle disagrees with Hopcroft-Karp for rank {r} to rank {rp}"
            ));
        }
        if let Some((f, g)) = self
            .matching
            .pairs()
            .into_iter()
            .find(|(f, g)| !f.is_subset_of(*g))
        {
            out.push(format!("matched {:?} -> {:?} is not a containment", f, g));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.injectivity.r,
            "r_prime": self.injectivity.r_prime,
            "injectivity": self.injectivity.to_json(),
            "matching_complete": self.matching.complete,
            "matched": self.matching.pairs().len(),
            "hall": self.hall,
            "alarms": self.alarms(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub top_heavy: TopHeavyReport,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn alarms(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .top_heavy
            .violations()
            .iter()
            .map(|p| {
                format!(
                    "|F_{}| = {} > |F_{}| = {}",
                    p.r, p.lower, p.r_prime, p.upper
                )
            })
            .collect();
        if !self.top_heavy.chain_increasing() {
            out.push(format!(
                "increasing chain fails: {:?}",
                self.top_heavy.increasing_chain
            ));
        }
        out.extend(self.entries.iter().flat_map(SuiteEntry::alarms));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "top_heavy": self.top_heavy.to_json(),
            "entries": self.entries.iter().map(SuiteEntry::to_json).collect::<Vec<_>>(),
            "alarms": self.alarms(),
        })
    }
}

/// Injectivity with unit weights, matching extraction and (when the left
/// side has at most `hall_limit` flats) the Hall oracle, for every pair
/// `r <= r'` with `r + r' <= rank`. Pairs run in parallel; the report lists
/// them in `(r, r')` order.
pub fn theorem_suite(m: &Matroid, hall_limit: usize) -> Result<SuiteReport, MatchingError> {
    let algebra = MobiusAlgebra::build(m)?;
    let w = algebra.unit_weights();
    let top_heavy = top_heavy_report(m)?;
    let lattice = m.flats()?;
    let pairs: Vec<(usize, usize)> = top_heavy.pairs.iter().map(|p| (p.r, p.r_prime)).collect();
    let entries = pairs
        .par_iter()
        .map(|&(r, rp)| {
            let injectivity = verify_injectivity(&algebra, r, rp, &w, Scope::Theorem)?;
            let matching = extract_matching(m, r, rp, Scope::Theorem)?;
            let hall = if lattice.level(r).len() <= hall_limit.min(HALL_MAX) {
                Some(brute_force_matching_exists(
                    &ContainmentGraph::from_lattice(&lattice, r, rp),
                )?)
            } else {
                None
            };
            Ok(SuiteEntry {
                injectivity,
                matching,
                hall,
            })
        })
        .collect::<Result<Vec<_>, MatchingError>>()?;
    Ok(SuiteReport { top_heavy, entries })
}
