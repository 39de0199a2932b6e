//! The slow additive continued-fraction algorithm: each step applies one of
//! `x + 1`, `1/x - 1`, `x - 1` according to an exact trichotomy, so a classic
//! partial quotient `n` unfolds into `n` unit moves. Tracks the matrix
//! sequence, produces the explicit transformation set level by level, and
//! compresses move lists back to classic partial quotients.

use std::collections::BTreeSet;
use std::fmt;


use crate::cf_classic::{cf_expand, expand};
use crate::error::{CheckViolation, Error};
use crate::exact::QuadIrr;
use crate::gl2::PglElement;
use crate::scalar::Scalar;
use core::cmp::Ordering;

/// The three moves of the slow step, in trichotomy order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowMove {
    /// `x <= 0`: apply `x + 1`.
    AddOne,
    /// `0 < x <= 1`: apply `1/x - 1`.
    RecipMinusOne,
    /// `x > 1`: apply `x - 1`.
    SubOne,
}

impl fmt::Display for SlowMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SlowMove::AddOne => "ADD_ONE",
            SlowMove::RecipMinusOne => "RECIP_MINUS_ONE",
            SlowMove::SubOne => "SUB_ONE",
        };
        write!(f, "{}", s)
    }
}

/// Which move the trichotomy selects at the value `x`.
pub fn move_at<T: Scalar>(x: &QuadIrr<T>) -> SlowMove {
    if x.signum() <= 0 {
        SlowMove::AddOne
    } else if x.cmp(&QuadIrr::one()) != Ordering::Greater {
        SlowMove::RecipMinusOne
    } else {
        SlowMove::SubOne
    }
}

/// One step of the slow expansion: the remainder `x_i`, the move that
/// produced it (`None` at the seed `i = 0`), and the matrix sending the
/// original `x` to `x_i`.
#[derive(Debug, Clone)]
pub struct SlowCfState<T: Scalar> {
    pub i: usize,
    pub x: QuadIrr<T>,
    pub mv: Option<SlowMove>,
    pub gamma_prime: PglElement<T>,
}

pub fn slow_start<T: Scalar>(x: &QuadIrr<T>) -> SlowCfState<T> {
    SlowCfState {
        i: 0,
        x: x.clone(),
        mv: None,
        gamma_prime: PglElement::identity(),
    }
}

/// Applies the move selected by the trichotomy at `x_i`. Total: the
/// reciprocal branch only runs on `0 < x <= 1`, so no division by zero is
/// reachable even for rational inputs.
pub fn slow_step<T: Scalar>(s: &SlowCfState<T>) -> SlowCfState<T> {
    let one = T::one();
    let mv = move_at(&s.x);
    let (x_next, step) = match mv {
        SlowMove::AddOne => (s.x.add_int(&one), PglElement::translation(&one)),
        SlowMove::RecipMinusOne => (
            s.x.recip().expect("x > 0 in the reciprocal branch").add_int(&-one.clone()),
            PglElement::translation(&-one.clone()).compose(&PglElement::inversion()),
        ),
        SlowMove::SubOne => (
            s.x.add_int(&-one.clone()),
            PglElement::translation(&-one.clone()),
        ),
    };
    SlowCfState {
        i: s.i + 1,
        x: x_next,
        mv: Some(mv),
        gamma_prime: step.compose(&s.gamma_prime),
    }
}

/// The first `steps` states (indices `1..=steps`).
pub fn slow_expand<T: Scalar>(x: &QuadIrr<T>, steps: usize) -> Vec<SlowCfState<T>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = slow_start(x);
    for _ in 0..steps {
        cur = slow_step(&cur);
        out.push(cur.clone());
    }
    out
}

pub fn moves_of<T: Scalar>(states: &[SlowCfState<T>]) -> Vec<SlowMove> {
    states
        .iter()
        .map(|s| s.mv.expect("states past the seed carry a move"))
        .collect()
}

/// Number of leading pure-translation steps before the first reciprocal
/// move: `|n_0|` where `n_0 = floor(x)`.
pub fn slow_prefix_length<T: Scalar>(x: &QuadIrr<T>) -> usize {
    x.floor()
        .abs()
        .to_usize()
        .expect("prefix length fits in usize")
}

/// The explicit transformation set of the slow algorithm through classic
/// level `i_max`: for each `1 <= i <= i_max` and `1 <= k <= n_i` the
/// canonical class of
/// `[[q_{i-2} + k q_{i-1}, -p_{i-2} - k p_{i-1}], [-q_{i-1}, p_{i-1}]]`.
pub fn gamma_prime_explicit<T: Scalar>(
    x: &QuadIrr<T>,
    i_max: usize,
) -> BTreeSet<PglElement<T>> {
    assert!(!x.is_rational(), "explicit set needs an irrational x");
    let exp = expand(x, i_max);
    let mut out = BTreeSet::new();
    for s in exp.states.iter().skip(1) {
        let n = s.n.to_i64().expect("partial quotient fits in i64");
        let mut k = T::one();
        for _ in 0..n {
            let el = PglElement::new(
                s.q_prev2.clone() + k.clone() * s.q_prev.clone(),
                -(s.p_prev2.clone() + k.clone() * s.p_prev.clone()),
                -s.q_prev.clone(),
                s.p_prev.clone(),
            )
            .expect("explicit elements are unimodular");
            out.insert(el);
            k = k + T::one();
        }
    }
    out
}

/// Run-length decodes a slow move list back to classic partial quotients.
///
/// The signed count of leading translations gives `n_0`; afterwards each
/// reciprocal move opens a level and `1 +` the number of `x - 1` moves before
/// the next reciprocal gives `n_i`. Only completed levels are emitted, so the
/// result always prefix-matches the classic expansion. Move lists that could
/// not have come from the trichotomy are rejected.
pub fn compress_slow_to_classic<T: Scalar>(moves: &[SlowMove]) -> Result<Vec<T>, Error> {
    let mut prefix_add = 0usize;
    let mut prefix_sub = 0usize;
    let mut seen_recip = false;
    let mut open_level: Option<usize> = None;
    let mut levels: Vec<usize> = Vec::new();
    for (pos, mv) in moves.iter().enumerate() {
        match mv {
            SlowMove::AddOne => {
                if seen_recip || prefix_sub > 0 {
                    return Err(Error::InvalidMoves(format!(
                        "ADD_ONE at position {} after a non-ADD_ONE move",
                        pos
                    )));
                }
                prefix_add += 1;
            }
            SlowMove::SubOne => {
                if prefix_add > 0 && !seen_recip {
                    return Err(Error::InvalidMoves(format!(
                        "SUB_ONE at position {} inside an ADD_ONE prefix",
                        pos
                    )));
                }
                if seen_recip {
                    *open_level.as_mut().unwrap() += 1;
                } else {
                    prefix_sub += 1;
                }
            }
            SlowMove::RecipMinusOne => {
                if let Some(subs) = open_level.take() {
                    levels.push(subs + 1);
                }
                seen_recip = true;
                open_level = Some(0);
            }
        }
    }
    if !seen_recip {
        return Ok(Vec::new());
    }
    let n0: i64 = if prefix_add > 0 {
        -(prefix_add as i64)
    } else {
        prefix_sub as i64
    };
    let mut out = vec![crate::scalar::int::<T>(n0)];
    out.extend(levels.into_iter().map(|n| crate::scalar::int::<T>(n as i64)));
    Ok(out)
}

fn violation(check: &'static str, input: &impl fmt::Display, detail: String) -> CheckViolation {
    CheckViolation {
        check,
        input: input.to_string(),
        detail,
    }
}

/// Trichotomy exactness, action consistency `gamma'_i(x) = x_i`,
/// reproducibility of the matrices from the moves alone, and prefix
/// agreement of the compressed move list with the classic expansion.
pub fn check_slow_consistency<T: Scalar>(
    x: &QuadIrr<T>,
    steps: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "slow-consistency";
    let states = slow_expand(x, steps);
    let mut prev_x = x.clone();
    let mut rebuilt = PglElement::identity();
    let one = T::one();
    for s in &states {
        let expected = move_at(&prev_x);
        if s.mv != Some(expected) {
            return Err(violation(
                CHECK,
                x,
                format!("move at step {} is {:?}, trichotomy says {:?}", s.i, s.mv, expected),
            ));
        }
        let step = match expected {
            SlowMove::AddOne => PglElement::translation(&one),
            SlowMove::RecipMinusOne => {
                PglElement::translation(&-one.clone()).compose(&PglElement::inversion())
            }
            SlowMove::SubOne => PglElement::translation(&-one.clone()),
        };
        rebuilt = step.compose(&rebuilt);
        if rebuilt != s.gamma_prime {
            return Err(violation(
                CHECK,
                x,
                format!("matrix at step {} not reproducible from moves", s.i),
            ));
        }
        match s.gamma_prime.act(x) {
            Ok(img) if img == s.x => {}
            _ => {
                return Err(violation(
                    CHECK,
                    x,
                    format!("gamma'_{} does not map x to x_{}", s.i, s.i),
                ));
            }
        }
        prev_x = s.x.clone();
    }
    let compressed: Vec<T> = match compress_slow_to_classic(&moves_of(&states)) {
        Ok(v) => v,
        Err(e) => return Err(violation(CHECK, x, e.to_string())),
    };
    if !compressed.is_empty() {
        let classic = cf_expand(x, compressed.len());
        if compressed != classic[..compressed.len().min(classic.len())] {
            return Err(violation(
                CHECK,
                x,
                format!("compressed quotients {:?} do not prefix-match", compressed),
            ));
        }
    }
    Ok(())
}

/// Set equality between the recursively generated post-prefix matrices and
/// the explicit set through classic level `i_max`. The `|n_0|` leading
/// translation matrices are excluded: they fix infinity and are not of the
/// explicit form.
pub fn check_explicit_set<T: Scalar>(x: &QuadIrr<T>, i_max: usize) -> Result<(), CheckViolation> {
    const CHECK: &str = "slow-explicit-set";
    if x.is_rational() {
        return Err(violation(CHECK, x, "requires an irrational input".into()));
    }
    let prefix = slow_prefix_length(x);
    let quotients = cf_expand(x, i_max + 1);
    let steps: usize = prefix
        + quotients[1..=i_max]
            .iter()
            .map(|n| n.to_usize().expect("quotient fits usize"))
            .sum::<usize>();
    let states = slow_expand(x, steps);
    let generated: BTreeSet<PglElement<T>> = states
        .iter()
        .filter(|s| s.i > prefix)
        .map(|s| s.gamma_prime.clone())
        .collect();
    let explicit = gamma_prime_explicit(x, i_max);
    if generated != explicit {
        let missing: Vec<String> = explicit.difference(&generated).map(|g| g.to_string()).collect();
        let extra: Vec<String> = generated.difference(&explicit).map(|g| g.to_string()).collect();
        return Err(violation(
            CHECK,
            x,
            format!("missing from generated: {:?}; extra: {:?}", missing, extra),
        ));
    }
    Ok(())
}
