mod common;

use common::{random_line_matroid, rational};
use matwork::exactlin::{kernel_basis, ExactMatrix, FieldSpec};
use matwork::matroid::{Matroid, Subset};
use matwork::tropical::{
    member, trop_eval, tropical_linear_space, vanishes, TropPolynomial, TropValue,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trop_value() -> impl Strategy<Value = TropValue> {
    prop_oneof![
        1 => Just(TropValue::NegInf),
        6 => (-3i64..=3).prop_map(TropValue::from_int),
        2 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| TropValue::Finite(rational(n, d))),
    ]
}

fn small_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![
        Just(Matroid::fano()),
        Just(Matroid::non_pappus()),
        (1usize..=4, 0usize..=4).prop_map(|(r, e)| Matroid::uniform(r, r + e).unwrap()),
        (any::<u64>(), 3usize..=9).prop_map(|(s, n)| random_line_matroid(
            &mut ChaCha8Rng::seed_from_u64(s),
            n
        )
        .1),
    ]
}

fn shift(xi: &[TropValue], c: &TropValue) -> Vec<TropValue> {
    xi.iter()
        .map(|x| match (x, c) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::NegInf,
        })
        .collect()
}

proptest! {
    #[test]
    fn membership_is_translation_invariant(
        m in small_matroid(),
        xi in prop::collection::vec(trop_value(), 9),
        (cn, cd) in (-20i64..=20, 1i64..=4),
    ) {
        let t = tropical_linear_space(&m).unwrap();
        let xi = &xi[..m.n()];
        let c = TropValue::Finite(rational(cn, cd));
        prop_assert_eq!(member(&t, xi).unwrap(), member(&t, &shift(xi, &c)).unwrap());
    }

    #[test]
    fn all_equal_points_are_members(m in small_matroid(), c in trop_value()) {
        let t = tropical_linear_space(&m).unwrap();
        prop_assert!(member(&t, &vec![c; m.n()]).unwrap());
    }

    #[test]
    fn hyperplane_matches_uniform_circuit(xi in prop::collection::vec(trop_value(), 1..7)) {
        let n = xi.len();
        let h = TropPolynomial::hyperplane(n);
        let t = tropical_linear_space(&Matroid::uniform(n, n + 1).unwrap()).unwrap();
        prop_assert_eq!(t.circuits(), &[Subset::full(n + 1)][..]);
        let mut padded = vec![TropValue::zero()];
        padded.extend(xi.iter().cloned());
        prop_assert_eq!(vanishes(&h, &xi).unwrap(), member(&t, &padded).unwrap());
    }

    #[test]
    fn circuit_dependencies_tropicalize(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..=7)) {
        prop_assume!(rows.iter().all(|r| r.iter().any(|&v| v != 0)));
        let q = FieldSpec::Rationals;
        let p = ExactMatrix::from_i64_rows(q, &rows).unwrap();
        let m = Matroid::linear(p.clone()).unwrap();
        let n = m.n();
        for s in m.circuits().unwrap() {
            let idx = s.to_vec();
            // Columns of the transpose restricted to S; its kernel holds the
            // dependence Σ λ_i row_i = 0.
            let sub = p.select_rows(&idx).transpose();
            let kernel = kernel_basis(&sub);
            prop_assert_eq!(kernel.len(), 1);
            let lambda: Vec<_> = kernel[0].iter().map(|e| e.as_rational().unwrap().clone()).collect();
            prop_assert!(lambda.iter().all(|l| !l.is_zero()));
            let mut full = vec![num_rational::BigRational::zero(); n];
            for (&i, l) in idx.iter().zip(&lambda) {
                full[i] = l.clone();
            }
            let form = TropPolynomial::linear_form(&full).unwrap();
            prop_assert_eq!(&form, &TropPolynomial::circuit_form(n, s).unwrap());
            let xi: Vec<TropValue> =
                (0..n).map(|i| if s.contains(i) { TropValue::zero() } else { TropValue::NegInf }).collect();
            let (value, ties) = trop_eval(&form, &xi).unwrap();
            prop_assert_eq!(value, TropValue::zero());
            prop_assert_eq!(ties, s.len());
            prop_assert!(vanishes(&form, &xi).unwrap());
        }
    }
}
