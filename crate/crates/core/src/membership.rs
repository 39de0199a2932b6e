//! The transformation sets cut out by linear inequalities on the actions at
//! infinity and at `x`, their explicit exceptional elements, and brute-force
//! verification that they coincide with the sets generated by the classic
//! and slow algorithms, over every matrix up to a height bound.

use std::collections::BTreeSet;


use crate::cf_classic::{cf_start, cf_step, expand};
use crate::cf_slow::{slow_expand, slow_prefix_length};
use crate::error::{CheckViolation, Error};
use crate::exact::QuadIrr;
use crate::gl2::{enumerate_by_height, PglElement};
use crate::scalar::{int, Scalar};
use core::cmp::Ordering;

/// `gamma(inf) in [-1, 0]` and `gamma(x) > 1`, both exact. The point at
/// infinity fails the interval test.
pub fn in_w<T: Scalar>(g: &PglElement<T>, x: &QuadIrr<T>) -> bool {
    let (a, _, c, _) = g.entries();
    if c.is_zero() {
        return false;
    }
    // canonical c > 0: -1 <= a/c <= 0 means a <= 0 and a + c >= 0
    if a.is_positive() || (a.clone() + c.clone()).is_negative() {
        return false;
    }
    match g.act(x) {
        Ok(img) => img.cmp(&QuadIrr::one()) == Ordering::Greater,
        Err(_) => false,
    }
}

/// The determinant-one piece of `in_w` fixing `gamma(inf) = 0`.
pub fn in_w1<T: Scalar>(g: &PglElement<T>, x: &QuadIrr<T>) -> bool {
    let (a, _, c, _) = g.entries();
    !c.is_zero() && a.is_zero() && g.det() == 1 && in_w(g, x)
}

/// The determinant-minus-one piece of `in_w` fixing `gamma(inf) = -1`.
pub fn in_w2<T: Scalar>(g: &PglElement<T>, x: &QuadIrr<T>) -> bool {
    let (a, _, c, _) = g.entries();
    !c.is_zero() && *a == -c.clone() && g.det() == -1 && in_w(g, x)
}

/// `gamma(inf) <= -1` and `gamma(x) > 0`, both exact; infinity fails.
pub fn in_wp<T: Scalar>(g: &PglElement<T>, x: &QuadIrr<T>) -> bool {
    let (a, _, c, _) = g.entries();
    if c.is_zero() {
        return false;
    }
    // canonical c > 0: a/c <= -1 means a + c <= 0
    if (a.clone() + c.clone()).is_positive() {
        return false;
    }
    match g.act(x) {
        Ok(img) => img.signum() > 0,
        Err(_) => false,
    }
}

/// The determinant-one piece of `in_wp` fixing `gamma(inf) = -1`.
pub fn in_wp1<T: Scalar>(g: &PglElement<T>, x: &QuadIrr<T>) -> bool {
    let (a, _, c, _) = g.entries();
    !c.is_zero() && *a == -c.clone() && g.det() == 1 && in_wp(g, x)
}

/// The unique exceptional element with `gamma(inf) = 0` and determinant one:
/// `[[0, -1], [1, -1-n_0]]`.
pub fn w1_element<T: Scalar>(x: &QuadIrr<T>) -> PglElement<T> {
    assert!(!x.is_rational());
    let n0 = x.floor();
    PglElement::new(T::zero(), -T::one(), T::one(), -T::one() - n0)
        .expect("determinant one by construction")
}

/// The exceptional element `[[-1, 1+n_0], [1, -n_0]]`, present exactly when
/// the second partial quotient is at least 2.
pub fn w2_element<T: Scalar>(x: &QuadIrr<T>) -> Option<PglElement<T>> {
    assert!(!x.is_rational());
    let s0 = cf_start(x);
    let s1 = cf_step(&s0).expect("irrational input");
    if s1.n < int(2) {
        return None;
    }
    let n0 = s0.n;
    Some(
        PglElement::new(-T::one(), T::one() + n0.clone(), T::one(), -n0)
            .expect("determinant minus one by construction"),
    )
}

/// The unique exceptional element of the slow set: `[[1, -n_0], [-1, n_0+1]]`.
pub fn wp1_element<T: Scalar>(x: &QuadIrr<T>) -> PglElement<T> {
    assert!(!x.is_rational());
    let n0 = x.floor();
    PglElement::new(T::one(), -n0.clone(), -T::one(), n0 + T::one())
        .expect("determinant one by construction")
}

/// Outcome of comparing an inequality-defined set against a generated set
/// inside the height-`h` box.
#[derive(Debug, Clone)]
pub struct MembershipReport<T: Scalar> {
    pub theorem: &'static str,
    pub x: QuadIrr<T>,
    pub height_bound: i64,
    /// Number of box elements on which both sides agree.
    pub matched: usize,
    /// Predicted by the inequalities but never generated by the algorithm.
    pub missing_from_gamma_set: Vec<PglElement<T>>,
    /// Generated by the algorithm (within the box) but outside the predicted set.
    pub extra_in_gamma_set: Vec<PglElement<T>>,
    pub exceptional_w1: Vec<PglElement<T>>,
    pub exceptional_w2: Vec<PglElement<T>>,
    pub expected_w1: usize,
    pub expected_w2: usize,
    /// Leading pure-translation steps excluded from the slow set (0 for the
    /// classic theorem).
    pub prefix_excluded: usize,
}

impl<T: Scalar> MembershipReport<T> {
    /// Verified: no set discrepancy, and the exceptional elements found in
    /// the box are exactly the ones whose height admits them.
    pub fn is_clean(&self) -> bool {
        self.missing_from_gamma_set.is_empty()
            && self.extra_in_gamma_set.is_empty()
            && self.exceptional_w1.len() == self.expected_w1
            && self.exceptional_w2.len() == self.expected_w2
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble<T: Scalar>(
    theorem: &'static str,
    x: &QuadIrr<T>,
    h: i64,
    predicted: BTreeSet<PglElement<T>>,
    generated: BTreeSet<PglElement<T>>,
    exceptional_w1: Vec<PglElement<T>>,
    exceptional_w2: Vec<PglElement<T>>,
    expected_w1: usize,
    expected_w2: usize,
    prefix_excluded: usize,
) -> MembershipReport<T> {
    let matched = predicted.intersection(&generated).count();
    let missing = predicted.difference(&generated).cloned().collect();
    let extra = generated.difference(&predicted).cloned().collect();
    MembershipReport {
        theorem,
        x: x.clone(),
        height_bound: h,
        matched,
        missing_from_gamma_set: missing,
        extra_in_gamma_set: extra,
        exceptional_w1,
        exceptional_w2,
        expected_w1,
        expected_w2,
        prefix_excluded,
    }
}

/// Classic-set identity over the height-`h` box, with the expansion taken to
/// `depth` partial quotients. Requires `q_{depth-1} > h` so that every
/// in-box element of the generated set has already appeared.
pub fn verify_theorem1<T: Scalar>(
    x: &QuadIrr<T>,
    h: i64,
    depth: usize,
) -> Result<MembershipReport<T>, Error> {
    let elements = enumerate_by_height::<T>(h);
    verify_theorem1_with_box(x, h, depth, &elements)
}

/// As [`verify_theorem1`], reusing a precomputed box enumeration.
pub fn verify_theorem1_with_box<T: Scalar>(
    x: &QuadIrr<T>,
    h: i64,
    depth: usize,
    elements: &[PglElement<T>],
) -> Result<MembershipReport<T>, Error> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    assert!(depth >= 2, "depth must cover at least two quotients");
    let exp = expand(x, depth);
    let h_t: T = int(h);
    if exp.states[depth - 1].q <= h_t {
        return Err(Error::InsufficientDepth(format!(
            "q_{} = {} must exceed the height bound {}",
            depth - 1,
            exp.states[depth - 1].q,
            h
        )));
    }
    let predicted: BTreeSet<PglElement<T>> = elements
        .iter()
        .filter(|g| in_w(g, x) && !in_w1(g, x) && !in_w2(g, x))
        .cloned()
        .collect();
    let generated: BTreeSet<PglElement<T>> = exp
        .states
        .iter()
        .skip(1)
        .map(|s| s.gamma.clone())
        .filter(|g| g.height() <= h_t)
        .collect();
    let exc_w1: Vec<PglElement<T>> = elements.iter().filter(|g| in_w1(g, x)).cloned().collect();
    let exc_w2: Vec<PglElement<T>> = elements.iter().filter(|g| in_w2(g, x)).cloned().collect();
    let expected_w1 = usize::from(w1_element(x).height() <= h_t);
    let expected_w2 = match w2_element(x) {
        Some(g) => usize::from(g.height() <= h_t),
        None => 0,
    };
    Ok(assemble(
        "t1", x, h, predicted, generated, exc_w1, exc_w2, expected_w1, expected_w2, 0,
    ))
}

/// Slow-set identity over the height-`h` box, generated from `slow_steps`
/// moves with the translation prefix excluded. Requires enough steps that
/// the last fully completed classic level has convergent denominator
/// exceeding `h`.
pub fn verify_theorem2<T: Scalar>(
    x: &QuadIrr<T>,
    h: i64,
    slow_steps: usize,
) -> Result<MembershipReport<T>, Error> {
    let elements = enumerate_by_height::<T>(h);
    verify_theorem2_with_box(x, h, slow_steps, &elements)
}

/// As [`verify_theorem2`], reusing a precomputed box enumeration.
pub fn verify_theorem2_with_box<T: Scalar>(
    x: &QuadIrr<T>,
    h: i64,
    slow_steps: usize,
    elements: &[PglElement<T>],
) -> Result<MembershipReport<T>, Error> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let h_t: T = int(h);
    let prefix = slow_prefix_length(x);

    // Count the classic levels the step budget fully covers and make sure
    // their denominators already exceed the box height.
    let mut covered_q: Option<T> = None;
    let mut consumed = prefix;
    let mut st = cf_start(x);
    while consumed < slow_steps {
        let next = cf_step(&st).expect("irrational input never terminates");
        let budget: T = int((slow_steps - consumed) as i64);
        if next.n > budget {
            break;
        }
        consumed += next.n.to_usize().expect("bounded by the step budget");
        covered_q = Some(next.q.clone());
        if *covered_q.as_ref().unwrap() > h_t {
            break;
        }
        st = next;
    }
    match covered_q {
        Some(q) if q > h_t => {}
        _ => {
            return Err(Error::InsufficientDepth(format!(
                "{} slow steps do not complete a classic level with q > {}",
                slow_steps, h
            )));
        }
    }

    let predicted: BTreeSet<PglElement<T>> = elements
        .iter()
        .filter(|g| in_wp(g, x) && !in_wp1(g, x))
        .cloned()
        .collect();
    let generated: BTreeSet<PglElement<T>> = slow_expand(x, slow_steps)
        .iter()
        .filter(|s| s.i > prefix)
        .map(|s| s.gamma_prime.clone())
        .filter(|g| g.height() <= h_t)
        .collect();
    let exc_wp1: Vec<PglElement<T>> = elements.iter().filter(|g| in_wp1(g, x)).cloned().collect();
    let expected_wp1 = usize::from(wp1_element(x).height() <= h_t);
    Ok(assemble(
        "t2",
        x,
        h,
        predicted,
        generated,
        exc_wp1,
        Vec::new(),
        expected_wp1,
        0,
        prefix,
    ))
}

/// The cheap direction needing no enumeration: every generated matrix of the
/// classic algorithm satisfies the classic inequalities and avoids both
/// exceptional sets, and every post-prefix matrix of the slow algorithm
/// satisfies the slow inequalities and avoids its exceptional set.
pub fn check_inequality_soundness<T: Scalar>(
    x: &QuadIrr<T>,
    depth: usize,
    slow_steps: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "membership-soundness";
    let fail = |detail: String| CheckViolation {
        check: CHECK,
        input: x.to_string(),
        detail,
    };
    if x.is_rational() {
        return Err(fail("requires an irrational input".into()));
    }
    for s in expand(x, depth).states.iter().skip(1) {
        if !in_w(&s.gamma, x) || in_w1(&s.gamma, x) || in_w2(&s.gamma, x) {
            return Err(fail(format!("classic matrix at index {} misclassified", s.i)));
        }
    }
    let prefix = slow_prefix_length(x);
    for s in slow_expand(x, slow_steps).iter().filter(|s| s.i > prefix) {
        if !in_wp(&s.gamma_prime, x) || in_wp1(&s.gamma_prime, x) {
            return Err(fail(format!("slow matrix at step {} misclassified", s.i)));
        }
    }
    Ok(())
}
