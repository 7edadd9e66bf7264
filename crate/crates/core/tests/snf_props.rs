mod common;

use emtower::intlin::{cokernel, image_rank, kernel};
use emtower::IntMatrix;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

/// Product of random elementary operations on `n x n`.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        for (i, j, k, swap) in ops {
            if swap {
                rows.swap(i, j);
            } else if i != j {
                for c in 0..n {
                    rows[i][c] += k * rows[j][c];
                }
            }
        }
        IntMatrix::from_rows(&rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_identities_and_residue_oracle(m in matrix()) {
        if let Err(e) = common::check_snf(&m) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn kernel_rank_plus_image_rank_is_cols(m in matrix()) {
        let (k, basis) = kernel(&m);
        prop_assert_eq!(k.free_rank() + image_rank(&m), m.cols());
        prop_assert!(m.mul(&basis).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cokernel_invariant_under_unimodular_change(
        (m, u, v) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (
            prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)
                .prop_map(|rows| IntMatrix::from_rows(&rows)),
            unimodular(r),
            unimodular(c),
        ))
    ) {
        prop_assert_eq!(cokernel(&u.mul(&m).mul(&v)), cokernel(&m));
    }
}

#[test]
fn oracle_sees_small_examples() {
    let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
    assert_eq!(common::check_snf(&m), Ok(true));
    let zero = IntMatrix::from_rows(&[[0]]);
    assert!(zero.get(0, 0).is_zero());
    assert_eq!(common::check_snf(&zero), Ok(false));
}
