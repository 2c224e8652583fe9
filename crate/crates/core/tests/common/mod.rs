#![allow(dead_code)]

use matwork::exactlin::{ExactMatrix, FieldSpec};
use matwork::gradedalg::{monomial_basis, MonomialAlgebraSpec};
use matwork::matroid::{Matroid, Subset};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random rank-3 line configuration on `n` points: candidate lines of size 3
/// or 4 are added greedily whenever they meet every chosen line in at most
/// one point.
pub fn random_lines<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let attempts = rng.gen_range(0..3 * n);
    let points: Vec<usize> = (0..n).collect();
    for _ in 0..attempts {
        let size = if n >= 4 && rng.gen_bool(0.25) { 4 } else { 3 };
        let mut line: Vec<usize> = points.choose_multiple(rng, size).copied().collect();
        line.sort_unstable();
        let ok = lines
            .iter()
            .all(|l| l.iter().filter(|p| line.contains(p)).count() <= 1);
        if ok {
            lines.push(line);
        }
    }
    lines
}

pub fn random_line_matroid<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<usize>>, Matroid) {
    let lines = random_lines(rng, n);
    let m = Matroid::from_lines(n, &lines).expect("non-crossing lines form a matroid");
    (lines, m)
}

/// Flats by direct scan of all subsets: `S` is a flat iff adding any outside
/// element raises the rank.
pub fn brute_force_flats(m: &Matroid) -> Vec<Vec<Subset>> {
    let n = m.n();
    let mut levels = vec![Vec::new(); m.rank_total() + 1];
    for bits in 0..(1u64 << n) {
        let s = Subset::from_bits(bits);
        let r = m.rank(s);
        if (0..n)
            .filter(|&i| !s.contains(i))
            .all(|i| m.rank(s.with(i)) > r)
        {
            levels[r].push(s);
        }
    }
    for level in &mut levels {
        level.sort();
    }
    levels
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn matrix_from_ints(field: FieldSpec, rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
    let entries = vals[..rows * cols]
        .iter()
        .map(|&v| field.from_i64(v))
        .collect();
    ExactMatrix::new(field, rows, cols, entries).expect("well-formed matrix")
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Coefficient of `x^a` in `ω^k x^b` for `ω = Σ x_i`: the multinomial
/// `k! / Π (a_i - b_i)!` when `b ≤ a`, zero otherwise.
pub fn path_count(a: &[u32], b: &[u32]) -> BigInt {
    if a.iter().zip(b).any(|(x, y)| x < y) {
        return BigInt::from(0);
    }
    let k: u32 = a.iter().zip(b).map(|(x, y)| x - y).sum();
    a.iter()
        .zip(b)
        .fold(factorial(k), |acc, (x, y)| acc / factorial(x - y))
}

/// Matrix of `ω^(to - from)` built entrywise from path counts, for
/// degree-one generators.
pub fn path_count_matrix(spec: &MonomialAlgebraSpec, from: u64, to: u64) -> ExactMatrix {
    let q = FieldSpec::Rationals;
    let src = monomial_basis(spec, from);
    let dst = monomial_basis(spec, to);
    let mut m = ExactMatrix::zeros(q, dst.len(), src.len());
    for (r, t) in dst.iter().enumerate() {
        for (c, s) in src.iter().enumerate() {
            let v = BigRational::from_integer(path_count(t, s));
            m.set(r, c, q.from_rational(&v).expect("rational"))
                .expect("in range");
        }
    }
    m
}
