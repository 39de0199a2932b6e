//! A fixed corpus of small quadratic irrationals used by the verification
//! suite: a mix of pure square roots, golden-ratio relatives, shifted and
//! negated values, covering positive/negative floors and both `n_1 = 1` and
//! `n_1 >= 2` behaviors while keeping every exceptional element inside a
//! height-25 box.

use crate::exact::QuadIrr;
use crate::scalar::{int, Scalar};

/// Twenty small irrationals `(a + b sqrt d)/c` with `|floor| <= 5`.
pub fn small_surds<T: Scalar>() -> Vec<QuadIrr<T>> {
    const SPEC: [(i64, i64, i64, i64); 20] = [
        (0, 1, 2, 1),   // sqrt 2
        (0, 1, 3, 1),   // sqrt 3
        (0, 1, 5, 1),   // sqrt 5
        (0, 1, 6, 1),   // sqrt 6
        (0, 1, 7, 1),   // sqrt 7
        (0, 1, 10, 1),  // sqrt 10
        (0, 1, 13, 1),  // sqrt 13
        (1, 1, 5, 2),   // golden ratio
        (-1, 1, 5, 2),  // its reciprocal, inside (0, 1)
        (1, 1, 2, 1),   // 1 + sqrt 2
        (3, 1, 13, 2),  // fixed point of x = 3 + 1/x
        (2, 1, 5, 1),   // 2 + sqrt 5
        (1, 1, 3, 2),
        (2, 1, 7, 3),
        (1, -1, 2, 1),  // 1 - sqrt 2, inside (-1, 0)
        (0, -1, 2, 1),  // -sqrt 2
        (3, -1, 11, 2), // inside (-1, 0)
        (5, 1, 29, 2),
        (-3, 1, 17, 4),
        (7, -2, 6, 5),
    ];
    SPEC.iter()
        .map(|&(a, b, d, c)| {
            QuadIrr::new(int(a), int(b), int(d), int(c)).expect("corpus entries are valid")
        })
        .collect()
}
