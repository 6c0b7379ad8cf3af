//! Property-based checks over randomized inputs.

use proptest::prelude::*;

use psc_core::diagram::{finite_subgroups_equal, SubgroupDescriptor};
use psc_core::torus::{Rat, TorusElement};
use psc_core::LieAlgebra;

fn z2_vector(rank: usize) -> impl Strategy<Value = TorusElement> {
    prop::collection::vec(prop::bool::ANY, rank).prop_map(|bits| {
        TorusElement::from_rationals(
            bits.into_iter()
                .map(|b| if b { Rat::new(1, 2) } else { Rat::new(0, 1) })
                .collect(),
        )
    })
}

fn z2_descriptor(rank: usize) -> impl Strategy<Value = SubgroupDescriptor<f64>> {
    prop::collection::vec(z2_vector(rank), 1..3)
        .prop_map(move |gens| SubgroupDescriptor::finite(rank, gens).unwrap())
}

proptest! {
    // equality of generated subgroups is an equivalence relation on the
    // order-2 descriptors of a fixed torus
    #[test]
    fn finite_subgroup_equality_is_an_equivalence(
        a in z2_descriptor(3),
        b in z2_descriptor(3),
        c in z2_descriptor(3),
    ) {
        prop_assert!(finite_subgroups_equal(&a, &a).unwrap());
        prop_assert_eq!(
            finite_subgroups_equal(&a, &b).unwrap(),
            finite_subgroups_equal(&b, &a).unwrap()
        );
        if finite_subgroups_equal(&a, &b).unwrap() && finite_subgroups_equal(&b, &c).unwrap() {
            prop_assert!(finite_subgroups_equal(&a, &c).unwrap());
        }
    }

    // bracket bilinearity and antisymmetry on random vectors
    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        x in prop::collection::vec(-10.0f64..10.0, 3),
        y in prop::collection::vec(-10.0f64..10.0, 3),
        s in -5.0f64..5.0,
    ) {
        let su2 = LieAlgebra::su2();
        let xy = su2.bracket(&x, &y).unwrap();
        let yx = su2.bracket(&y, &x).unwrap();
        for k in 0..3 {
            prop_assert!((xy[k] + yx[k]).abs() <= 1e-9);
        }
        let sx: Vec<f64> = x.iter().map(|v| v * s).collect();
        let sxy = su2.bracket(&sx, &y).unwrap();
        for k in 0..3 {
            prop_assert!((sxy[k] - s * xy[k]).abs() <= 1e-9 * (1.0 + xy[k].abs() * s.abs()));
        }
    }

    // the submersion bound is invariant under rotating an orthonormal pair
    // inside its own plane
    #[test]
    fn sec_bound_plane_invariance(theta in 0.0f64..std::f64::consts::TAU) {
        let su2 = LieAlgebra::su2();
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let (s, c) = theta.sin_cos();
        let u: Vec<f64> = (0..3).map(|k| c * e1[k] + s * e2[k]).collect();
        let v: Vec<f64> = (0..3).map(|k| -s * e1[k] + c * e2[k]).collect();
        let b0 = psc_core::classify::sec_lower_bound(&su2, &e1, &e2, 1e-9).unwrap();
        let b1 = psc_core::classify::sec_lower_bound(&su2, &u, &v, 1e-9).unwrap();
        prop_assert!((b0 - b1).abs() <= 1e-12);
    }
}
