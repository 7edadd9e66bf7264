#![no_main]

use emtower::intlin::smith_normal_form;
use emtower::IntMatrix;
use libfuzzer_sys::fuzz_target;
use num_traits::{One, Signed, Zero};

// first byte picks the shape, the rest are entries
fuzz_target!(|data: &[u8]| {
    let Some((&shape, rest)) = data.split_first() else {
        return;
    };
    let rows = (shape % 6) as usize + 1;
    let cols = (shape / 6 % 6) as usize + 1;
    if rest.len() < rows * cols {
        return;
    }
    let entries: Vec<Vec<i64>> = rest[..rows * cols]
        .chunks(cols)
        .map(|r| r.iter().map(|&b| b as i8 as i64).collect())
        .collect();
    let m = IntMatrix::from_rows(&entries);
    let snf = smith_normal_form(&m);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    assert!(snf.u.determinant().abs().is_one());
    assert!(snf.v.determinant().abs().is_one());
    let diag = snf.diagonal();
    for w in diag.windows(2) {
        assert!(if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        });
    }
});
