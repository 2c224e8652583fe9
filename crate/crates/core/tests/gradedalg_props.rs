mod common;

use common::{path_count, path_count_matrix};
use matwork::exactlin::rank;
use matwork::gradedalg::{
    graded_dims, hlp_check, monomial_basis, omega_power_matrix, palindrome_check, unimodal_check,
    MonomialAlgebraSpec,
};
use num_rational::BigRational;
use proptest::prelude::*;

/// Every exponent vector under the caps, by odometer enumeration.
fn all_monomials(caps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; caps.len()]];
    for (i, &c) in caps.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=c).map(move |e| {
                    let mut m = m.clone();
                    m[i] = e;
                    m
                })
            })
            .collect();
    }
    out
}

fn standard_spec() -> impl Strategy<Value = MonomialAlgebraSpec> {
    prop::collection::vec(1u32..=3, 1..=4).prop_map(MonomialAlgebraSpec::standard)
}

fn weighted_spec() -> impl Strategy<Value = MonomialAlgebraSpec> {
    prop::collection::vec((0u32..=4, 1u32..=6), 1..=5).prop_map(|v| {
        let (caps, degrees) = v.into_iter().unzip();
        MonomialAlgebraSpec::new(caps, degrees).unwrap()
    })
}

proptest! {
    #[test]
    fn dims_count_monomials(spec in weighted_spec()) {
        let dims = graded_dims(&spec).unwrap();
        let mut brute = vec![0u64; spec.topdeg() as usize + 1];
        for m in all_monomials(spec.caps()) {
            let deg: u32 = m.iter().zip(spec.degrees()).map(|(e, d)| e * d).sum();
            brute[deg as usize] += 1;
        }
        prop_assert_eq!(&dims, &brute);
        for (k, &d) in dims.iter().enumerate() {
            prop_assert_eq!(monomial_basis(&spec, k as u64).len() as u64, d);
        }
        prop_assert_eq!(dims.iter().sum::<u64>(), spec.total_monomials().unwrap());
    }

    #[test]
    fn dims_are_palindromic(spec in weighted_spec()) {
        prop_assert!(palindrome_check(&spec).unwrap());
    }

    #[test]
    fn omega_powers_follow_path_counts(spec in standard_spec(), from in 0u64..6, len in 0u64..6) {
        let top = spec.topdeg();
        let from = from.min(top);
        let to = (from + len).min(top);
        let a = omega_power_matrix(&spec, from, to).unwrap();
        let src = monomial_basis(&spec, from);
        let dst = monomial_basis(&spec, to);
        for (i, t) in dst.iter().enumerate() {
            for (j, s) in src.iter().enumerate() {
                let expected = BigRational::from_integer(path_count(t, s));
                prop_assert_eq!(a.get(i, j).as_rational().unwrap(), &expected);
            }
        }
    }

    #[test]
    fn hlp_agrees_with_direct_rank(spec in standard_spec()) {
        let report = hlp_check(&spec).unwrap();
        let top = spec.topdeg();
        for map in &report.maps {
            let i = map.degree;
            let m = path_count_matrix(&spec, i, top - i);
            prop_assert_eq!(map.rank, rank(&m));
        }
        prop_assert!(report.passed());
    }

    #[test]
    fn hlp_implies_unimodal(spec in standard_spec()) {
        let report = hlp_check(&spec).unwrap();
        if report.passed() {
            prop_assert!(unimodal_check(&report.dims));
        }
    }
}
