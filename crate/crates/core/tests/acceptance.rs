//! End-to-end verification suite. Each test is one acceptance criterion,
//! runs at full scale, and prints a single PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`).

mod common;

use common::{canonical_tail_cycle, random_corpus};

use cfred::cf_classic::{
    cf_expand, check_delta_chain, check_determinant_identity, check_farey_lemma,
    check_growth_inequalities, check_legendre, check_matrix_identities,
};
use cfred::cf_slow::{check_explicit_set, compress_slow_to_classic, moves_of, slow_expand};
use cfred::corpus::small_surds;
use cfred::gl2::enumerate_by_height;
use cfred::hurwitz::{equiv_witness, n_of, sync_indices, sync_indices_with_bound};
use cfred::membership::{
    verify_theorem1_with_box, verify_theorem2_with_box, w1_element, w2_element, wp1_element,
};
use cfred::{Int, Pgl, Quad};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 0x5eed_cf01;

fn pass(n: usize, name: &str) {
    println!("criterion {:02} ({}): PASS", n, name);
}

#[test]
fn c01_determinant_identity() {
    for x in random_corpus(CORPUS_SEED, 100) {
        check_determinant_identity(&x, 30).unwrap_or_else(|v| panic!("{}", v));
    }
    pass(1, "determinant identity, depth 30, 100 random values");
}

#[test]
fn c02_growth_delta_and_matrix_identities() {
    for x in random_corpus(CORPUS_SEED, 100) {
        check_growth_inequalities(&x, 30).unwrap_or_else(|v| panic!("{}", v));
        check_delta_chain(&x, 30).unwrap_or_else(|v| panic!("{}", v));
        check_matrix_identities(&x, 30).unwrap_or_else(|v| panic!("{}", v));
    }
    pass(2, "growth inequalities, delta chain, matrix identities");
}

#[test]
fn c03_legendre_criterion() {
    for x in random_corpus(CORPUS_SEED, 100) {
        check_legendre(&x, 50).unwrap_or_else(|v| panic!("{}", v));
    }
    pass(3, "best-approximation criterion, denominators to 50");
}

#[test]
fn c04_farey_neighbor_selection() {
    for x in random_corpus(CORPUS_SEED, 100) {
        check_farey_lemma(&x, 30).unwrap_or_else(|v| panic!("{}", v));
    }
    pass(4, "Farey-neighbor convergent selection, denominators to 30");
}

#[test]
fn c05_classic_set_identity_box25() {
    let elements = enumerate_by_height::<Int>(25);
    for x in small_surds::<Int>() {
        let r = verify_theorem1_with_box(&x, 25, 12, &elements).expect("preconditions hold");
        assert!(
            r.is_clean(),
            "x = {}: missing {:?}, extra {:?}",
            x,
            r.missing_from_gamma_set,
            r.extra_in_gamma_set
        );
        assert_eq!(r.exceptional_w1, vec![w1_element(&x)], "x = {}", x);
        let n1 = cf_expand(&x, 2)[1].clone();
        match w2_element(&x) {
            Some(g) => {
                assert!(n1 >= Int::from(2));
                assert_eq!(r.exceptional_w2, vec![g], "x = {}", x);
            }
            None => {
                assert_eq!(n1, Int::from(1));
                assert!(r.exceptional_w2.is_empty(), "x = {}", x);
            }
        }
    }
    pass(5, "classic transformation set equals its inequality cut, height 25");
}

#[test]
fn c06_slow_set_identity_box25() {
    let elements = enumerate_by_height::<Int>(25);
    for x in small_surds::<Int>() {
        let r = verify_theorem2_with_box(&x, 25, 400, &elements).expect("preconditions hold");
        assert!(
            r.is_clean(),
            "x = {}: missing {:?}, extra {:?}",
            x,
            r.missing_from_gamma_set,
            r.extra_in_gamma_set
        );
        assert_eq!(r.exceptional_w1, vec![wp1_element(&x)], "x = {}", x);
    }
    pass(6, "slow transformation set equals its inequality cut, height 25");
}

#[test]
fn c07_explicit_slow_set_through_level_8() {
    for x in random_corpus(CORPUS_SEED, 100) {
        check_explicit_set(&x, 8).unwrap_or_else(|v| panic!("{}", v));
    }
    pass(7, "explicit slow set equals generated set through level 8");
}

#[test]
fn c08_slow_to_classic_compression() {
    for x in random_corpus(CORPUS_SEED, 100) {
        let moves = moves_of(&slow_expand(&x, 200));
        let compressed: Vec<Int> = compress_slow_to_classic(&moves).expect("grammar holds");
        if !compressed.is_empty() {
            let classic = cf_expand(&x, compressed.len());
            assert_eq!(
                compressed,
                classic[..compressed.len()],
                "compression mismatch for {}",
                x
            );
        }
    }
    pass(8, "200 slow steps compress to a classic prefix");
}

#[test]
fn c09_synchronization_bound_grid() {
    let gammas = enumerate_by_height::<Int>(10);
    let xs = small_surds::<Int>();
    for g in &gammas {
        let bound = n_of(g);
        for x in &xs {
            let r = sync_indices_with_bound(g, x, bound.n_floor, bound.clone())
                .unwrap_or_else(|e| panic!("gamma = {}, x = {}: {}", g, x, e));
            assert!(
                r.within_bound,
                "gamma = {}, x = {}: (s, t) = ({}, {}) exceeds {}",
                g, x, r.s, r.t, r.bound.n_floor
            );
        }
    }
    // transformations fixing infinity synchronize within three steps
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x9);
    for _ in 0..50 {
        let a = if rng.random_bool(0.5) { 1 } else { -1 };
        let mut b = 0i64;
        while b == 0 {
            b = rng.random_range(-100i64..=100);
        }
        let g = Pgl::from_i64s(a, b, 0, 1).unwrap();
        let x = xs[rng.random_range(0..xs.len())].clone();
        let r = sync_indices(&g, &x, 3)
            .unwrap_or_else(|e| panic!("gamma = {}, x = {}: {}", g, x, e));
        assert!(r.s <= 3 && r.t <= 3);
    }
    pass(9, "synchronization within N over the height-10 grid, N = 3 at infinity");
}

#[test]
fn c10_equivalence_witness_loop() {
    let gammas = enumerate_by_height::<Int>(8);
    let xs = small_surds::<Int>();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x10);
    for _ in 0..100 {
        let g = &gammas[rng.random_range(0..gammas.len())];
        let x = &xs[rng.random_range(0..xs.len())];
        let y = g.act(x).expect("irrational has no pole");
        let w = equiv_witness(x, &y, 40)
            .unwrap_or_else(|| panic!("no witness for gamma = {}, x = {}", g, x));
        assert_eq!(w.act(x).unwrap(), y, "unsound witness for x = {}", x);
        let bound = n_of(&w);
        let r = sync_indices_with_bound(&w, x, bound.n_floor, bound.clone())
            .unwrap_or_else(|e| panic!("witness sync failed: {}", e));
        assert!(r.within_bound);
    }
    // distinct minimal tail cycles certify inequivalence: no witness exists
    let base: Vec<Quad> = small_surds::<Int>().into_iter().take(8).collect();
    let mut checked = 0;
    'outer: for i in 0..base.len() {
        for j in (i + 1)..base.len() {
            let (x, y) = (&base[i], &base[j]);
            assert_ne!(
                canonical_tail_cycle(x),
                canonical_tail_cycle(y),
                "{} and {} share a tail cycle",
                x,
                y
            );
            assert!(
                equiv_witness(x, y, 40).is_none(),
                "unexpected witness between {} and {}",
                x,
                y
            );
            checked += 1;
            if checked == 20 {
                break 'outer;
            }
        }
    }
    assert_eq!(checked, 20);
    pass(10, "witnesses close the loop; inequivalent pairs stay absent");
}

#[test]
fn c11_golden_values() {
    let phi = Quad::new(1.into(), 1.into(), 5.into(), 2.into()).unwrap();
    let sqrt2 = Quad::new(0.into(), 1.into(), 2.into(), 1.into()).unwrap();
    assert_eq!(cf_expand(&phi, 10), vec![Int::from(1); 10]);
    let mut expect = vec![Int::from(1)];
    expect.extend(vec![Int::from(2); 9]);
    assert_eq!(cf_expand(&sqrt2, 10), expect);
    assert_eq!(w1_element(&sqrt2), Pgl::from_i64s(0, -1, 1, -2).unwrap());
    assert!(w2_element(&phi).is_none());
    pass(11, "golden expansions and exceptional elements");
}
