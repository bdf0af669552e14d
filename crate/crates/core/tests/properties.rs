use opnorm_core::ck::op_norm_sup;
use opnorm_core::embed::{discretize_dual_ball, theorem_a6_norm, DiscretizationStrategy};
use opnorm_core::numkernel::{spectral_norm, spectral_radius};
use opnorm_core::{NormedSpaceModel, Operator, OperatorValuedNorm, ScalarField, C64};
use proptest::prelude::*;

fn real_matrix(max: usize) -> impl Strategy<Value = Operator> {
    (1..=max).prop_flat_map(|k| {
        prop::collection::vec(-5.0f64..5.0, k * k)
            .prop_map(move |v| Operator::from_fn(k, k, |i, j| C64::new(v[i * k + j], 0.0)))
    })
}

fn real_vector(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(-10.0f64..10.0, n).prop_map(|v| v.into_iter().map(|x| C64::new(x, 0.0)).collect())
}

proptest! {
    #[test]
    fn sup_norm_is_a_norm(a in real_matrix(6), s in -4.0f64..4.0) {
        let b = Operator::from_fn(a.rows(), a.cols(), |i, j| a.get(j % a.rows(), i) * 0.5);
        let na = op_norm_sup(&a).unwrap();
        prop_assert!((op_norm_sup(&a.scale_real(s)).unwrap() - s.abs() * na).abs() <= 1e-12 * (1.0 + na));
        prop_assert!(op_norm_sup(&(&a + &b)).unwrap() <= na + op_norm_sup(&b).unwrap() + 1e-12);
    }

    #[test]
    fn spectral_radius_below_norm(a in real_matrix(5)) {
        let n = spectral_norm(&a).unwrap();
        prop_assert!(spectral_radius(&a).unwrap() <= n * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn exact_l1_embedding_is_isometric(b in real_vector(3)) {
        let space = NormedSpaceModel::l1(3, ScalarField::Real).unwrap();
        let f = theorem_a6_norm(&discretize_dual_ball(&space, &DiscretizationStrategy::Exact).unwrap());
        let nb = space.norm(&b);
        prop_assert!((f.norm_at(&b).unwrap() - nb).abs() <= 1e-12 * nb.max(1.0));
    }
}
