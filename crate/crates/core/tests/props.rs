//! Property tests for the exact linear algebra and the reflection
//! machinery: random inputs, exact invariants.

use casimir::affine::build_affine_roots;
use casimir::linalg::gram_adjoint;
use casimir::pair::{build_pair, PairSpec};
use casimir::rat::{rat, Rat, RatVector};
use casimir::SparseRatMatrix;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = SparseRatMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(nrows, ncols)| {
        proptest::collection::vec((any::<i8>(), 1u8..4), nrows * ncols).prop_map(move |entries| {
            let mut m = SparseRatMatrix::zero(nrows, ncols);
            for (k, (num, den)) in entries.into_iter().enumerate() {
                let r = k / ncols;
                let c = k % ncols;
                m.set(r, c, rat(num as i64, den as i64));
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nullspace_vectors_are_killed_exactly(m in small_matrix()) {
        let ns = m.nullspace();
        for v in &ns {
            let image = m.mul_vec(v);
            prop_assert!(image.iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank() + ns.len(), m.ncols());
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let r1 = m.row_space_rref();
        let r2 = r1.row_space_rref();
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn gram_adjoint_defining_identity_holds(a in small_matrix()) {
        // positive definite grams from B^T B + I
        let gd = {
            let b = SparseRatMatrix::identity(a.ncols()).scale(&rat(3, 2));
            b.transpose().matmul(&b).add(&SparseRatMatrix::identity(a.ncols()))
        };
        let gc = {
            let b = SparseRatMatrix::identity(a.nrows()).scale(&rat(1, 3));
            b.transpose().matmul(&b).add(&SparseRatMatrix::identity(a.nrows()))
        };
        let adj = gram_adjoint(&a, &gd, &gc).unwrap();
        prop_assert_eq!(a.transpose().matmul(&gc), gd.matmul(&adj));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reflections_are_involutive(
        coeffs in proptest::collection::vec(-3i64..4, 1),
        delta_num in -2i64..3,
        lambda_num in -2i64..3,
    ) {
        let sp = build_pair(&PairSpec::parse("A1:switch").unwrap()).unwrap();
        let ar = build_affine_roots(&sp, 6);
        let lambda = casimir::affine::AffineWeight {
            finite: coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect::<RatVector>(),
            delta: rat(delta_num, 2),
            lambda0: rat(lambda_num, 1),
        };
        for alpha in &ar.simple {
            let once = ar.reflect(&lambda, alpha).unwrap();
            let twice = ar.reflect(&once, alpha).unwrap();
            prop_assert_eq!(&twice, &lambda);
        }
    }
}
