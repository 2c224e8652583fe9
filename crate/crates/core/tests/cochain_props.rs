use matwork::cochain::{
    cohomology_dims, cube_surface, d0, d1, torus_grid, triangulated_torus, CellComplex2,
};
use matwork::exactlin::FieldSpec;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
    ]
}

fn complex() -> impl Strategy<Value = CellComplex2> {
    prop_oneof![
        (2usize..=5).prop_map(|k| torus_grid(k).unwrap()),
        (2usize..=3).prop_map(|k| torus_grid(k).unwrap().subdivide_edges()),
        Just(cube_surface()),
        Just(cube_surface().subdivide_edges()),
        Just(triangulated_torus()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(x in complex(), f in field()) {
        let prod = x.d1_matrix(f).mul(&x.d0_matrix(f)).unwrap();
        prop_assert!(prod.is_zero());
    }

    #[test]
    fn operators_match_matrices(x in complex(), f in field(), vals in prop::collection::vec(-4i64..=4, 64)) {
        let f0: Vec<_> = (0..x.vertex_count()).map(|i| f.from_i64(vals[i % vals.len()])).collect();
        prop_assert_eq!(d0(&x, f, &f0).unwrap(), x.d0_matrix(f).mul_vec(&f0).unwrap());
        let f1: Vec<_> = (0..x.edge_count()).map(|i| f.from_i64(vals[(3 * i + 1) % vals.len()])).collect();
        prop_assert_eq!(d1(&x, f, &f1).unwrap(), x.d1_matrix(f).mul_vec(&f1).unwrap());
        let grad = d0(&x, f, &f0).unwrap();
        prop_assert!(d1(&x, f, &grad).unwrap().iter().all(|e| f.is_zero(e)));
    }

    #[test]
    fn euler_identity_and_duality(x in complex(), f in field()) {
        let h = cohomology_dims(&x, f);
        prop_assert_eq!(h.euler(), x.euler_characteristic());
        prop_assert_eq!(h.h0, h.h2);
        prop_assert_eq!(h.h0, 1);
    }

    #[test]
    fn refinement_preserves_cohomology(k in 2usize..=3, f in field()) {
        let t = torus_grid(k).unwrap();
        prop_assert_eq!(cohomology_dims(&t, f), cohomology_dims(&t.subdivide_edges(), f));
    }

    #[test]
    fn json_round_trips(x in complex()) {
        prop_assert_eq!(CellComplex2::from_json(&x.to_json()).unwrap(), x);
    }
}
