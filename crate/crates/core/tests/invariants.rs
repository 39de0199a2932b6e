//! Property-style invariants at corpus scale that sit alongside the
//! acceptance criteria: inequality soundness without enumeration,
//! translation covariance of the transformation sets, sign-class
//! independence, and scalar-type genericity.

mod common;

use common::random_corpus;

use cfred::cf_classic::cf_expand;
use cfred::corpus::small_surds;
use cfred::hurwitz::check_translation_covariance;
use cfred::membership::{check_inequality_soundness, in_w, in_wp};
use cfred::{Int, Pgl, PglElement, Quad, QuadIrr};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn inequality_soundness_over_random_corpus() {
    for x in random_corpus(0x5eed_cf01, 100) {
        check_inequality_soundness(&x, 30, 80).unwrap_or_else(|v| panic!("{}", v));
    }
}

#[test]
fn translation_covariance_over_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_57);
    for x in small_surds::<Int>() {
        let b = rng.random_range(-8i64..=8);
        if b == 0 {
            continue;
        }
        check_translation_covariance(&x, b, 20).unwrap_or_else(|v| panic!("{}", v));
    }
}

#[test]
fn predicates_ignore_the_sign_representative() {
    let x = Quad::new(0.into(), 1.into(), 2.into(), 1.into()).unwrap();
    for (a, b, c, d) in [(0i64, 1, 1, -1), (1, -2, -1, 1), (-1, 2, 1, -1), (2, -3, -1, 1)] {
        let g = Pgl::from_i64s(a, b, c, d).unwrap();
        let neg = Pgl::from_i64s(-a, -b, -c, -d).unwrap();
        assert_eq!(g, neg);
        assert_eq!(in_w(&g, &x), in_w(&neg, &x));
        assert_eq!(in_wp(&g, &x), in_wp(&neg, &x));
    }
}

#[test]
fn core_is_generic_over_the_scalar() {
    // the same expansion through the i128 backend
    let sqrt2 = QuadIrr::<i128>::new(0, 1, 2, 1).unwrap();
    let quotients = cf_expand(&sqrt2, 8);
    assert_eq!(quotients, vec![1i128, 2, 2, 2, 2, 2, 2, 2]);
    let g = PglElement::<i128>::from_i64s(0, 1, 1, -1).unwrap();
    assert_eq!(g.act(&sqrt2).unwrap(), QuadIrr::<i128>::new(1, 1, 2, 1).unwrap());
}
