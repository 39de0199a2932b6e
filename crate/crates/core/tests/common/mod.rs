//! Shared fixtures for the integration suites: a seeded random corpus of
//! quadratic irrationals and an independent tail-period oracle.
//!
//! Included from more than one test target, so not every target uses
//! every item.
#![allow(dead_code)]

use cfred::cf_classic::{cf_start, cf_step};
use cfred::{Int, Quad};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet};

/// `count` distinct random irrationals `(a + b sqrt d)/c` with
/// `|a|, |b| <= 50`, `2 <= d <= 500`, `1 <= c <= 50`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Quad> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.random_range(-50i64..=50);
        let b = rng.random_range(-50i64..=50);
        let d = rng.random_range(2i64..=500);
        let c = rng.random_range(1i64..=50);
        let x = match Quad::new(a.into(), b.into(), d.into(), c.into()) {
            Ok(x) => x,
            Err(_) => continue,
        };
        if x.is_rational() {
            continue;
        }
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

/// The minimal quotient cycle of the eventually periodic expansion of an
/// irrational quadratic, in its lexicographically least rotation. Two such
/// numbers have a common expansion tail exactly when these cycles agree,
/// which makes distinct cycles a certificate of inequivalence.
pub fn canonical_tail_cycle(x: &Quad) -> Vec<Int> {
    let mut seen: HashMap<Quad, usize> = HashMap::new();
    let mut quotients: Vec<Int> = Vec::new();
    let mut st = cf_start(x);
    loop {
        if let Some(&start) = seen.get(&st.x) {
            let cycle = quotients[start..].to_vec();
            return least_rotation(&minimal_period(&cycle));
        }
        seen.insert(st.x.clone(), st.i);
        quotients.push(st.n.clone());
        st = cf_step(&st).expect("irrational input never terminates");
    }
}

fn minimal_period(cycle: &[Int]) -> Vec<Int> {
    let n = cycle.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (0..n).all(|i| cycle[i] == cycle[i % p]) {
            return cycle[..p].to_vec();
        }
    }
    cycle.to_vec()
}

fn least_rotation(cycle: &[Int]) -> Vec<Int> {
    let n = cycle.len();
    (0..n)
        .map(|s| {
            let mut rot = Vec::with_capacity(n);
            for i in 0..n {
                rot.push(cycle[(s + i) % n].clone());
            }
            rot
        })
        .min()
        .expect("nonempty cycle")
}
