mod common;

use common::{brute_force_flats, random_line_matroid};
use matwork::exactlin::{ExactMatrix, FieldSpec};
use matwork::matching::{brute_force_matching_exists, ContainmentGraph};
use matwork::matroid::{check_axioms, AxiomMode, Matroid, Subset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random loopless linear matroid over 𝔽₃ in dimension 3 or 4.
fn linear_strategy() -> impl Strategy<Value = Matroid> {
    (3usize..=4, 3usize..=9).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop::collection::vec(0i64..3, d), n).prop_filter_map(
            "zero row",
            move |rows| {
                if rows.iter().any(|r| r.iter().all(|&v| v == 0)) {
                    return None;
                }
                let f3 = FieldSpec::prime(3).unwrap();
                Matroid::linear(ExactMatrix::from_i64_rows(f3, &rows).unwrap()).ok()
            },
        )
    })
}

fn lines_strategy() -> impl Strategy<Value = Matroid> {
    (any::<u64>(), 3usize..=9)
        .prop_map(|(seed, n)| random_line_matroid(&mut ChaCha8Rng::seed_from_u64(seed), n).1)
}

fn any_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![
        linear_strategy(),
        lines_strategy(),
        (1usize..=6, 0usize..=4).prop_map(|(r, extra)| Matroid::uniform(r, r + extra).unwrap()),
        Just(Matroid::fano()),
        Just(Matroid::non_pappus()),
    ]
}

fn with_subset() -> impl Strategy<Value = (Matroid, Subset, Subset)> {
    any_matroid().prop_flat_map(|m| {
        let full = m.ground().bits();
        (Just(m), any::<u64>(), any::<u64>()).prop_map(move |(m, a, b)| {
            (m, Subset::from_bits(a & full), Subset::from_bits(b & full))
        })
    })
}

fn sorted_levels(m: &Matroid) -> Vec<Vec<Subset>> {
    let lattice = m.flats().unwrap();
    lattice
        .levels()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort();
            l
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructed_matroids_satisfy_axioms(m in any_matroid()) {
        prop_assert!(check_axioms(&m, AxiomMode::Exhaustive).unwrap().passed());
    }

    #[test]
    fn closure_is_a_closure_operator((m, s, t) in with_subset()) {
        let cl = m.closure(s);
        prop_assert!(s.is_subset_of(cl.members));
        prop_assert_eq!(m.closure(cl.members).members, cl.members);
        prop_assert_eq!(cl.rank, m.rank(s));
        prop_assert!(m.is_flat(cl.members));
        if s.is_subset_of(t) {
            prop_assert!(cl.members.is_subset_of(m.closure(t).members));
        }
        let u = s.union(t);
        prop_assert!(m.closure(u).members.is_subset_of(m.join(s, t).members)
            && m.join(s, t).members.is_subset_of(m.closure(u).members));
    }

    #[test]
    fn lattice_matches_brute_force_scan(m in any_matroid()) {
        prop_assert_eq!(sorted_levels(&m), brute_force_flats(&m));
    }

    #[test]
    fn circuits_are_minimal_dependent_sets(m in any_matroid()) {
        let circuits = m.circuits().unwrap();
        let n = m.n();
        let mut expected = Vec::new();
        for bits in 1..(1u64 << n) {
            let s = Subset::from_bits(bits);
            if m.rank(s) < s.len() && s.iter().all(|i| m.is_independent(s.without(i))) {
                expected.push(s);
            }
        }
        let mut got = circuits.clone();
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn contraction_flats_are_flats_above((m, s, _) in with_subset()) {
        let f = m.closure(s);
        prop_assume!(f.members != m.ground());
        let lattice = m.flats().unwrap();
        let minor = m.contraction(f.members).unwrap();
        prop_assert_eq!(minor.rank_total(), m.rank_total() - f.rank);
        let whitney = minor.whitney().unwrap();
        for (k, &count) in whitney.iter().enumerate() {
            let above = lattice.level(f.rank + k).iter().filter(|g| f.members.is_subset_of(**g)).count();
            prop_assert_eq!(count, above);
        }
    }

    #[test]
    fn restriction_flats_are_flats_below((m, s, _) in with_subset()) {
        let f = m.closure(s);
        prop_assume!(!f.members.is_empty());
        let lattice = m.flats().unwrap();
        let minor = m.restriction(f.members).unwrap();
        prop_assert_eq!(minor.n(), f.members.len());
        prop_assert_eq!(minor.rank_total(), f.rank);
        let whitney = minor.whitney().unwrap();
        for (k, &count) in whitney.iter().enumerate() {
            let below = lattice.level(k).iter().filter(|g| g.is_subset_of(f.members)).count();
            prop_assert_eq!(count, below);
        }
    }

    #[test]
    fn de_bruijn_erdos(m in prop_oneof![lines_strategy(), linear_strategy()]) {
        prop_assume!(m.rank_total() == 3);
        let w = m.whitney().unwrap();
        prop_assert!(w[1] <= w[2], "points {} > lines {}", w[1], w[2]);
        let g = ContainmentGraph::from_lattice(&m.flats().unwrap(), 1, 2);
        prop_assert!(brute_force_matching_exists(&g).unwrap());
    }
}
