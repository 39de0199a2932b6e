//! The classic positive continued-fraction algorithm with full exact state:
//! partial quotients `n_i`, convergents `p_i/q_i`, the delta sequence
//! `delta_i = (-1)^i (p_{i-1} - q_{i-1} x)`, and the transformation matrices
//! `gamma_i` mapping `x` to the remainder `x_i`.

use crate::error::{CheckViolation, Error};
use crate::exact::{fmt_rational, QuadIrr, Rational};
use crate::gl2::PglElement;
use crate::scalar::{int, Scalar};
use core::cmp::Ordering;

/// One step of the expansion of `x`: everything indexed by `i`, plus the two
/// trailing convergent pairs that the matrix identities and the membership
/// verifiers need.
#[derive(Debug, Clone)]
pub struct ClassicCfState<T: Scalar> {
    pub i: usize,
    /// Remainder `x_i`.
    pub x: QuadIrr<T>,
    /// Partial quotient `n_i = floor(x_i)`.
    pub n: T,
    pub p: T,
    pub q: T,
    pub p_prev: T,
    pub q_prev: T,
    pub p_prev2: T,
    pub q_prev2: T,
    /// `delta_i`; positive and strictly decreasing while the expansion runs.
    pub delta: QuadIrr<T>,
    pub delta_prev: QuadIrr<T>,
    /// Canonical class of `gamma_i`.
    pub gamma: PglElement<T>,
    /// The signed matrix product behind `gamma_i`. Canonicalization loses the
    /// sign that the vector identity `gamma_i (x, 1)^T = (delta_{i-1}, delta_i)^T`
    /// depends on, so the raw product is kept alongside.
    pub gamma_raw: [[T; 2]; 2],
}

fn mat_mul<T: Scalar>(m1: &[[T; 2]; 2], m2: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    let e = |r: usize, c: usize| {
        m1[r][0].clone() * m2[0][c].clone() + m1[r][1].clone() * m2[1][c].clone()
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_identity<T: Scalar>() -> [[T; 2]; 2] {
    [[T::one(), T::zero()], [T::zero(), T::one()]]
}

/// State at `i = 0`.
pub fn cf_start<T: Scalar>(x: &QuadIrr<T>) -> ClassicCfState<T> {
    let n = x.floor();
    ClassicCfState {
        i: 0,
        x: x.clone(),
        n: n.clone(),
        p: n,
        q: T::one(),
        p_prev: T::one(),
        q_prev: T::zero(),
        p_prev2: T::zero(),
        q_prev2: T::one(),
        delta: QuadIrr::one(),
        delta_prev: x.clone(),
        gamma: PglElement::identity(),
        gamma_raw: mat_identity(),
    }
}

/// Advances one step: `x_{i+1} = 1/(x_i - n_i)` with all companion sequences.
///
/// Returns `None` exactly when `x_i` is an integer, i.e. a rational input has
/// been exhausted. This is the typed termination signal, not a failure.
pub fn cf_step<T: Scalar>(s: &ClassicCfState<T>) -> Option<ClassicCfState<T>> {
    if s.x.is_integer() {
        return None;
    }
    let x_next = s
        .x
        .add_int(&-s.n.clone())
        .recip()
        .expect("x_i - n_i is nonzero for non-integer x_i");
    let n_next = x_next.floor();
    let p_next = n_next.clone() * s.p.clone() + s.p_prev.clone();
    let q_next = n_next.clone() * s.q.clone() + s.q_prev.clone();
    let delta_next = s.delta_prev.sub(&s.delta.scale_int(&s.n));
    let step = [
        [T::zero(), T::one()],
        [T::one(), -s.n.clone()],
    ];
    Some(ClassicCfState {
        i: s.i + 1,
        x: x_next,
        n: n_next,
        p: p_next,
        q: q_next,
        p_prev: s.p.clone(),
        q_prev: s.q.clone(),
        p_prev2: s.p_prev.clone(),
        q_prev2: s.q_prev.clone(),
        delta: delta_next,
        delta_prev: s.delta.clone(),
        gamma: PglElement::gauss_step(&s.n).compose(&s.gamma),
        gamma_raw: mat_mul(&step, &s.gamma_raw),
    })
}

/// A finite prefix of the expansion: states `0..=max`, fewer on termination.
#[derive(Debug, Clone)]
pub struct Expansion<T: Scalar> {
    pub states: Vec<ClassicCfState<T>>,
    /// True when the last state is integral, i.e. the expansion is complete.
    pub terminated: bool,
}

impl<T: Scalar> Expansion<T> {
    pub fn quotients(&self) -> Vec<T> {
        self.states.iter().map(|s| s.n.clone()).collect()
    }

    pub fn convergents(&self) -> Vec<Rational<T>> {
        self.states
            .iter()
            .map(|s| Rational::new(s.p.clone(), s.q.clone()))
            .collect()
    }
}

/// States `0..=max_index` of the expansion of `x`.
pub fn expand<T: Scalar>(x: &QuadIrr<T>, max_index: usize) -> Expansion<T> {
    let mut states = vec![cf_start(x)];
    while states.len() <= max_index {
        match cf_step(states.last().unwrap()) {
            Some(s) => states.push(s),
            None => break,
        }
    }
    let terminated = states.last().unwrap().x.is_integer();
    Expansion { states, terminated }
}

/// Expands until the convergent denominator exceeds `bound` (or the rational
/// input terminates).
pub fn expand_until_q_exceeds<T: Scalar>(x: &QuadIrr<T>, bound: &T) -> Expansion<T> {
    let mut states = vec![cf_start(x)];
    loop {
        let last = states.last().unwrap();
        if &last.q > bound {
            break;
        }
        match cf_step(last) {
            Some(s) => states.push(s),
            None => break,
        }
    }
    let terminated = states.last().unwrap().x.is_integer();
    Expansion { states, terminated }
}

/// First `depth` partial quotients `[n_0, n_1, ...]`, fewer if rational.
pub fn cf_expand<T: Scalar>(x: &QuadIrr<T>, depth: usize) -> Vec<T> {
    assert!(depth >= 1, "depth must be positive");
    expand(x, depth - 1).quotients()
}

/// First `depth` convergents `[p_0/q_0, p_1/q_1, ...]`, fewer if rational.
pub fn convergents<T: Scalar>(x: &QuadIrr<T>, depth: usize) -> Vec<Rational<T>> {
    assert!(depth >= 1, "depth must be positive");
    expand(x, depth - 1).convergents()
}

/// The canonical classes `[gamma_1, ..., gamma_depth]`, fewer if rational.
pub fn gamma_seq<T: Scalar>(x: &QuadIrr<T>, depth: usize) -> Vec<PglElement<T>> {
    assert!(depth >= 1, "depth must be positive");
    expand(x, depth)
        .states
        .iter()
        .skip(1)
        .map(|s| s.gamma.clone())
        .collect()
}

/// `[delta_{-1}, delta_0, ..., delta_depth]`, shorter if rational.
pub fn delta_seq<T: Scalar>(x: &QuadIrr<T>, depth: usize) -> Vec<QuadIrr<T>> {
    assert!(depth >= 1, "depth must be positive");
    let exp = expand(x, depth);
    let mut out = Vec::with_capacity(exp.states.len() + 1);
    out.push(exp.states[0].delta_prev.clone());
    out.extend(exp.states.iter().map(|s| s.delta.clone()));
    out
}

/// Whether `pq` appears among the first `depth` convergents of `x`.
///
/// Errors when the requested depth cannot settle the question, i.e. the
/// expansion neither terminated nor reached a denominator beyond `pq`'s.
pub fn is_convergent<T: Scalar>(
    pq: &Rational<T>,
    x: &QuadIrr<T>,
    depth: usize,
) -> Result<bool, Error> {
    assert!(depth >= 1, "depth must be positive");
    let exp = expand(x, depth - 1);
    if exp.convergents().iter().any(|c| c == pq) {
        return Ok(true);
    }
    if exp.terminated || &exp.states.last().unwrap().q > pq.denom() {
        return Ok(false);
    }
    Err(Error::InsufficientDepth(format!(
        "q_{} = {} does not exceed the denominator {}",
        exp.states.last().unwrap().i,
        exp.states.last().unwrap().q,
        pq.denom()
    )))
}

/// Which endpoints of a bracketing Farey-neighbor pair are convergents of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaSelection {
    First,
    Second,
    Both,
}

/// Given Farey neighbors `rt <= x <= su` (so `r u - s t = +-1`), returns the
/// nonempty subset of the endpoints that are convergents of `x`. At least one
/// always is; an empty selection is reported as an error.
pub fn lemma1_select<T: Scalar>(
    rt: &Rational<T>,
    su: &Rational<T>,
    x: &QuadIrr<T>,
) -> Result<LemmaSelection, Error> {
    let cross = rt.numer().clone() * su.denom().clone() - su.numer().clone() * rt.denom().clone();
    if !cross.abs().is_one() {
        return Err(Error::FareyPrecondition(format!(
            "r u - s t = {} for {} and {}",
            cross,
            fmt_rational(rt),
            fmt_rational(su)
        )));
    }
    if x.cmp_rational(rt) == Ordering::Less || x.cmp_rational(su) == Ordering::Greater {
        return Err(Error::FareyPrecondition(format!(
            "x does not lie in [{}, {}]",
            fmt_rational(rt),
            fmt_rational(su)
        )));
    }
    let max_den = rt.denom().clone().max(su.denom().clone());
    let exp = expand_until_q_exceeds(x, &max_den);
    let convs = exp.convergents();
    let first = convs.iter().any(|c| c == rt);
    let second = convs.iter().any(|c| c == su);
    match (first, second) {
        (true, true) => Ok(LemmaSelection::Both),
        (true, false) => Ok(LemmaSelection::First),
        (false, true) => Ok(LemmaSelection::Second),
        (false, false) => Err(Error::SelectionEmpty(format!(
            "{} and {} around x = {}",
            fmt_rational(rt),
            fmt_rational(su),
            x
        ))),
    }
}

/// `phi^i / sqrt(5)` as an exact value in Q(sqrt 5), via the Fibonacci and
/// Lucas recurrences: `phi^i = (L_i + F_i sqrt 5)/2`.
pub fn phi_pow_over_sqrt5<T: Scalar>(i: usize) -> QuadIrr<T> {
    let (mut f0, mut f1) = (T::zero(), T::one());
    let (mut l0, mut l1) = (int::<T>(2), T::one());
    for _ in 0..i {
        let f2 = f0 + f1.clone();
        f0 = f1;
        f1 = f2;
        let l2 = l0 + l1.clone();
        l0 = l1;
        l1 = l2;
    }
    QuadIrr::new(int::<T>(5) * f0, l0, int(5), int(10)).expect("valid construction")
}

fn violation(check: &'static str, input: &impl core::fmt::Display, detail: String) -> CheckViolation {
    CheckViolation {
        check,
        input: input.to_string(),
        detail,
    }
}

/// `p_{i} q_{i-1} - p_{i-1} q_{i} = (-1)^{i-1}` at every computed index.
pub fn check_determinant_identity<T: Scalar>(
    x: &QuadIrr<T>,
    depth: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "classic-determinant";
    for s in &expand(x, depth).states {
        let lhs = s.p.clone() * s.q_prev.clone() - s.p_prev.clone() * s.q.clone();
        let expected = if s.i % 2 == 0 { -T::one() } else { T::one() };
        if lhs != expected {
            return Err(violation(
                CHECK,
                x,
                format!("index {}: p q' - p' q = {}, expected {}", s.i, lhs, expected),
            ));
        }
    }
    Ok(())
}

/// The monotonicity and Fibonacci growth bounds of the convergents.
///
/// `q_i >= q_{i-1} >= 0` with strictness from index 2, and
/// `q_i >= phi^i / sqrt 5`, hold for every real `x`. On the numerator side
/// `|p_i| >= |p_{i-1}|` holds from index 2 and is strict from index 3 except
/// in the single degenerate family `p_1 = 0, n_3 = 1` (an `x` in `(-1/2, 0)`),
/// where index 3 ties. The bound `|p_i| >= phi^i / sqrt 5` holds for `x > 1`;
/// in general the numerators lag two Fibonacci indices behind.
pub fn check_growth_inequalities<T: Scalar>(
    x: &QuadIrr<T>,
    depth: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "classic-growth";
    let exp = expand(x, depth);
    let states = &exp.states;
    let p1_zero = states.get(1).map(|s| s.p.is_zero()).unwrap_or(false);
    let n0_positive = states[0].n > T::zero();
    for s in states {
        // denominators: q_i >= q_{i-1} >= 0, strict and positive from i = 2
        if s.q < s.q_prev || s.q_prev.is_negative() {
            return Err(violation(CHECK, x, format!("q not monotone at index {}", s.i)));
        }
        if s.i >= 2 && (s.q <= s.q_prev || !s.q_prev.is_positive()) {
            return Err(violation(CHECK, x, format!("q not strict at index {}", s.i)));
        }
        // numerators in absolute value
        if s.i >= 2 && s.p.abs() < s.p_prev.abs() {
            return Err(violation(CHECK, x, format!("|p| decreases at index {}", s.i)));
        }
        if s.i >= 3 && s.p.abs() == s.p_prev.abs() {
            let tie_allowed = s.i == 3 && p1_zero && s.n.is_one();
            if !tie_allowed {
                return Err(violation(CHECK, x, format!("|p| ties at index {}", s.i)));
            }
        }
        // Fibonacci lower bounds, exact in Q(sqrt 5)
        let qv = QuadIrr::from_int(s.q.clone());
        if qv.cmp(&phi_pow_over_sqrt5(s.i)) == Ordering::Less {
            return Err(violation(CHECK, x, format!("q_{} below phi bound", s.i)));
        }
        let pv = QuadIrr::from_int(s.p.abs());
        if n0_positive && pv.cmp(&phi_pow_over_sqrt5(s.i)) == Ordering::Less {
            return Err(violation(CHECK, x, format!("|p_{}| below phi bound", s.i)));
        }
        if s.i >= 2 && pv.cmp(&phi_pow_over_sqrt5(s.i - 2)) == Ordering::Less {
            return Err(violation(
                CHECK,
                x,
                format!("|p_{}| below shifted phi bound", s.i),
            ));
        }
    }
    Ok(())
}

/// The delta chain: `1 = delta_0 > delta_1 > ... > 0`, the recurrence value
/// equals the closed form `(-1)^i (p_{i-1} - q_{i-1} x)`, the quotient rule
/// `n_i = floor(delta_{i-1}/delta_i)`, and geometric decay
/// `delta_{i+2} < delta_i / 2`.
pub fn check_delta_chain<T: Scalar>(x: &QuadIrr<T>, depth: usize) -> Result<(), CheckViolation> {
    const CHECK: &str = "classic-delta-chain";
    let exp = expand(x, depth);
    let states = &exp.states;
    if states[0].delta != QuadIrr::one() {
        return Err(violation(CHECK, x, "delta_0 != 1".into()));
    }
    for s in states {
        let closed = {
            let v = QuadIrr::from_int(s.p_prev.clone()).sub(&x.scale_int(&s.q_prev));
            if s.i % 2 == 0 {
                v
            } else {
                v.neg()
            }
        };
        if closed != s.delta {
            return Err(violation(
                CHECK,
                x,
                format!("recurrence and closed form disagree at index {}", s.i),
            ));
        }
        if s.delta.signum() <= 0 {
            return Err(violation(CHECK, x, format!("delta_{} not positive", s.i)));
        }
        let ratio_floor = s
            .delta_prev
            .div(&s.delta)
            .expect("positive delta")
            .floor();
        if ratio_floor != s.n {
            return Err(violation(
                CHECK,
                x,
                format!("floor(delta_{}/delta_{}) != n_{}", s.i as i64 - 1, s.i, s.i),
            ));
        }
    }
    for w in states.windows(2) {
        if w[1].delta.cmp(&w[0].delta) != Ordering::Less {
            return Err(violation(
                CHECK,
                x,
                format!("delta chain not strictly decreasing at index {}", w[1].i),
            ));
        }
    }
    for w in states.windows(3) {
        if w[2].delta.scale_int(&int(2)).cmp(&w[0].delta) != Ordering::Less {
            return Err(violation(
                CHECK,
                x,
                format!("delta_{} not below half of delta_{}", w[2].i, w[0].i),
            ));
        }
    }
    Ok(())
}

/// The matrix identities: `gamma_i^{-1}` is the convergent matrix
/// `[[p_{i-1}, p_{i-2}], [q_{i-1}, q_{i-2}]]` (up to canonical sign, and
/// exactly at the signed-matrix level), and the signed product applied to
/// `(x, 1)^T` gives `(delta_{i-1}, delta_i)^T` exactly.
pub fn check_matrix_identities<T: Scalar>(
    x: &QuadIrr<T>,
    depth: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "classic-matrix-identity";
    for s in expand(x, depth).states.iter().skip(1) {
        let conv_mat = PglElement::new(
            s.p_prev.clone(),
            s.p_prev2.clone(),
            s.q_prev.clone(),
            s.q_prev2.clone(),
        )
        .expect("convergent matrix is unimodular");
        if s.gamma.inverse() != conv_mat {
            return Err(violation(
                CHECK,
                x,
                format!("gamma_{}^-1 is not the convergent matrix", s.i),
            ));
        }
        let raw_conv = [
            [s.p_prev.clone(), s.p_prev2.clone()],
            [s.q_prev.clone(), s.q_prev2.clone()],
        ];
        if mat_mul(&s.gamma_raw, &raw_conv) != mat_identity() {
            return Err(violation(
                CHECK,
                x,
                format!("signed product at index {} is not the exact inverse", s.i),
            ));
        }
        // the recurrence route and the explicit-product route must agree as classes
        let from_raw = PglElement::new(
            s.gamma_raw[0][0].clone(),
            s.gamma_raw[0][1].clone(),
            s.gamma_raw[1][0].clone(),
            s.gamma_raw[1][1].clone(),
        )
        .expect("product of unimodular steps");
        if from_raw != s.gamma {
            return Err(violation(
                CHECK,
                x,
                format!("recurrence and explicit product disagree at index {}", s.i),
            ));
        }
        let top = x.scale_int(&s.gamma_raw[0][0]).add_int(&s.gamma_raw[0][1]);
        let bottom = x.scale_int(&s.gamma_raw[1][0]).add_int(&s.gamma_raw[1][1]);
        if top != s.delta_prev || bottom != s.delta {
            return Err(violation(
                CHECK,
                x,
                format!("gamma_{} (x,1) != (delta_{}, delta_{})", s.i, s.i as i64 - 1, s.i),
            ));
        }
    }
    Ok(())
}

/// Best-approximation property: every rational within `1/(2 q^2)` of `x`
/// with denominator at most `max_den` is a convergent.
pub fn check_legendre<T: Scalar>(x: &QuadIrr<T>, max_den: i64) -> Result<(), CheckViolation> {
    const CHECK: &str = "legendre";
    let mut den: T = T::one();
    for _ in 1..=max_den {
        let scaled = x.scale_int(&den);
        let base = scaled.floor();
        for cand in [base.clone(), base + T::one()] {
            let g = cand.gcd(&den);
            if !g.is_one() {
                continue;
            }
            // |p - q x| < 1/(2q), all exact
            let diff = scaled.add_int(&-cand.clone()).abs();
            let half = Rational::new(T::one(), int::<T>(2) * den.clone());
            if diff.cmp_rational(&half) == Ordering::Less {
                let pq = Rational::new(cand.clone(), den.clone());
                match is_convergent(&pq, x, 64) {
                    Ok(true) => {}
                    Ok(false) => {
                        return Err(violation(
                            CHECK,
                            x,
                            format!(
                                "{} approximates within 1/(2q^2) but is not a convergent",
                                fmt_rational(&pq)
                            ),
                        ));
                    }
                    Err(e) => return Err(violation(CHECK, x, e.to_string())),
                }
            }
        }
        den = den + T::one();
    }
    Ok(())
}

/// All Farey-neighbor pairs with denominators at most `max_den` that bracket
/// the irrational `x`, i.e. the Stern-Brocot node intervals on the path to
/// `x`, starting from `(floor(x), floor(x)+1)`.
pub fn farey_brackets<T: Scalar>(x: &QuadIrr<T>, max_den: i64) -> Vec<(Rational<T>, Rational<T>)> {
    assert!(!x.is_rational(), "bracketing pairs need an irrational x");
    let n0 = x.floor();
    let mut lo = (n0.clone(), T::one());
    let mut hi = (n0 + T::one(), T::one());
    let cap: T = int(max_den);
    let mut out = vec![(
        Rational::new(lo.0.clone(), lo.1.clone()),
        Rational::new(hi.0.clone(), hi.1.clone()),
    )];
    loop {
        let med = (lo.0.clone() + hi.0.clone(), lo.1.clone() + hi.1.clone());
        if med.1 > cap {
            return out;
        }
        let med_rat = Rational::new(med.0.clone(), med.1.clone());
        if x.cmp_rational(&med_rat) == Ordering::Less {
            hi = med;
        } else {
            lo = med;
        }
        out.push((
            Rational::new(lo.0.clone(), lo.1.clone()),
            Rational::new(hi.0.clone(), hi.1.clone()),
        ));
    }
}

/// Runs the bracketing-pair selection over all Farey neighbors up to
/// `max_den` around `x`; every pair must yield a nonempty selection.
pub fn check_farey_lemma<T: Scalar>(x: &QuadIrr<T>, max_den: i64) -> Result<(), CheckViolation> {
    const CHECK: &str = "farey-lemma";
    for (rt, su) in farey_brackets(x, max_den) {
        if let Err(e) = lemma1_select(&rt, &su, x) {
            return Err(violation(
                CHECK,
                x,
                format!(
                    "pair ({}, {}): {}",
                    fmt_rational(&rt),
                    fmt_rational(&su),
                    e
                ),
            ));
        }
    }
    Ok(())
}
