//! Synchronization machinery: given a transformation `gamma`, a bound
//! `N(gamma)` — depending on `gamma` only — such that the expansions of `x`
//! and `gamma(x)` share a common remainder at indices at most `N`, plus the
//! search for minimal synchronization indices and equivalence witnesses.

use std::collections::HashMap;


use crate::cf_classic::{expand, gamma_seq};
use crate::error::{CheckViolation, Error};
use crate::exact::{rational_cf, ProjRational, QuadIrr, Rational};
use crate::gl2::PglElement;
use crate::scalar::{int, pow2, Scalar};

const FRAC_BITS: usize = 20;
const PREC_BITS: usize = 128;

/// Dyadic enclosure `[lo, hi] / 2^PREC_BITS` of a quadratic irrational.
fn enclose<T: Scalar>(y: &QuadIrr<T>) -> (T, T) {
    let scale = pow2::<T>(PREC_BITS);
    let (a, b, d, c) = y.parts();
    let (slo, shi) = if b.is_zero() {
        (T::zero(), T::zero())
    } else {
        let s = (b.clone() * b.clone() * d.clone() * scale.clone() * scale.clone()).sqrt();
        if b.is_negative() {
            (-s.clone() - T::one(), -s)
        } else {
            (s.clone(), s + T::one())
        }
    };
    let nlo = a.clone() * scale.clone() + slo;
    let nhi = a.clone() * scale + shi;
    (nlo.div_floor(c), nhi.div_ceil(c))
}

/// Certified rational upper bound on `log_phi(sqrt(5) * m)` for `m >= 1`,
/// within `2^-FRAC_BITS` of the true value: exact integer part against
/// Fibonacci/Lucas powers of `phi`, then binary digits of the fractional
/// part by interval squaring with outward rounding.
fn log_phi_sqrt5_upper<T: Scalar>(m: &T) -> Rational<T> {
    let target = QuadIrr::new(T::zero(), m.clone(), int(5), T::one()).expect("sqrt(5) m");
    let phi_exact = QuadIrr::new(T::one(), T::one(), int(5), int(2)).expect("phi");

    let mut k: usize = 0;
    let mut phi_pow = QuadIrr::one();
    loop {
        let next = phi_pow.mul(&phi_exact);
        if next.cmp(&target) == core::cmp::Ordering::Greater {
            break;
        }
        phi_pow = next;
        k += 1;
    }
    let y = target.div(&phi_pow).expect("phi power is nonzero");

    let scale = pow2::<T>(PREC_BITS);
    let mul_down = |u: &T, v: &T| (u.clone() * v.clone()).div_floor(&scale);
    let mul_up = |u: &T, v: &T| (u.clone() * v.clone()).div_ceil(&scale);
    let div_down = |u: &T, v: &T| (u.clone() * scale.clone()).div_floor(v);
    let div_up = |u: &T, v: &T| (u.clone() * scale.clone()).div_ceil(v);

    let (mut ylo, mut yhi) = enclose(&y);
    let (philo, phihi) = enclose(&phi_exact);
    let mut digits: i64 = 0;
    let mut emitted: usize = 0;
    for _ in 0..FRAC_BITS {
        let sq_lo = mul_down(&ylo, &ylo);
        let sq_hi = mul_up(&yhi, &yhi);
        if sq_lo >= phihi {
            digits = digits * 2 + 1;
            ylo = div_down(&sq_lo, &phihi);
            yhi = div_up(&sq_hi, &philo);
        } else if sq_hi <= philo {
            digits *= 2;
            ylo = sq_lo;
            yhi = sq_hi;
        } else {
            // Cannot certify the digit at this precision; the digits so far
            // still give a sound upper bound, just a coarser one.
            break;
        }
        emitted += 1;
    }
    let den = pow2::<T>(emitted);
    let num = int::<T>(k as i64) * den.clone() + int(digits + 1);
    Rational::new(num, den)
}

/// The bound `M(alpha) = log_phi(sqrt(5) min(|A|, B)) + 2r + 3` for a reduced
/// `alpha = A/B`, as a certified rational upper bound. `r` is the number of
/// convergents of `alpha`, i.e. the length of its canonical expansion.
///
/// For `alpha = 0` the logarithm is undefined; that term is clamped to zero,
/// which the `log_clamped` flag records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MBound<T: Scalar> {
    pub value: Rational<T>,
    pub r: usize,
    pub log_clamped: bool,
}

pub fn m_of<T: Scalar>(alpha: &Rational<T>) -> MBound<T> {
    let r = rational_cf(alpha).len();
    let tail: Rational<T> = Rational::from_integer(int(2 * r as i64 + 3));
    let m = alpha.numer().abs().min(alpha.denom().clone());
    if m.is_zero() {
        MBound {
            value: tail,
            r,
            log_clamped: true,
        }
    } else {
        MBound {
            value: log_phi_sqrt5_upper(&m) + tail,
            r,
            log_clamped: false,
        }
    }
}

/// The synchronization bound for one transformation: 3 when it fixes
/// infinity, otherwise the larger of the two `M` values at `gamma(inf)` and
/// `gamma^{-1}(inf)` (finite together).
#[derive(Debug, Clone)]
pub struct SyncBound<T: Scalar> {
    pub gamma: PglElement<T>,
    pub gamma_inf: ProjRational<T>,
    pub gamma_inv_inf: ProjRational<T>,
    pub m_forward: Option<MBound<T>>,
    pub m_backward: Option<MBound<T>>,
    pub n_value: Rational<T>,
    pub n_floor: usize,
}

pub fn n_of<T: Scalar>(gamma: &PglElement<T>) -> SyncBound<T> {
    let gamma_inf = gamma.image_of_infinity();
    let gamma_inv_inf = gamma.inverse().image_of_infinity();
    match (&gamma_inf, &gamma_inv_inf) {
        (ProjRational::Finite(fwd), ProjRational::Finite(bwd)) => {
            let mf = m_of(fwd);
            let mb = m_of(bwd);
            let n_value = mf.value.clone().max(mb.value.clone());
            let n_floor = n_value
                .to_integer()
                .to_usize()
                .expect("bound fits in usize");
            SyncBound {
                gamma: gamma.clone(),
                gamma_inf,
                gamma_inv_inf,
                m_forward: Some(mf),
                m_backward: Some(mb),
                n_value,
                n_floor,
            }
        }
        _ => SyncBound {
            gamma: gamma.clone(),
            gamma_inf,
            gamma_inv_inf,
            m_forward: None,
            m_backward: None,
            n_value: Rational::from_integer(int(3)),
            n_floor: 3,
        },
    }
}

/// A certificate that the expansions of `x` and `gamma(x)` coincide from
/// indices `s` and `t`: the remainders there agree exactly, which forces all
/// later partial quotients to agree.
#[derive(Debug, Clone)]
pub struct SyncResult<T: Scalar> {
    pub s: usize,
    pub t: usize,
    pub common_remainder: QuadIrr<T>,
    pub bound: SyncBound<T>,
    pub within_bound: bool,
}

/// Minimal `(s, t)` (by `s + t`, ties to smaller `s`) with `0 <= s, t <= cap`
/// and equal remainders between the expansions of `x` and `gamma(x)`.
pub fn sync_indices<T: Scalar>(
    gamma: &PglElement<T>,
    x: &QuadIrr<T>,
    cap: usize,
) -> Result<SyncResult<T>, Error> {
    sync_indices_with_bound(gamma, x, cap, n_of(gamma))
}

/// As [`sync_indices`] with a precomputed bound, so grid verifications can
/// evaluate `N(gamma)` once per transformation.
pub fn sync_indices_with_bound<T: Scalar>(
    gamma: &PglElement<T>,
    x: &QuadIrr<T>,
    cap: usize,
    bound: SyncBound<T>,
) -> Result<SyncResult<T>, Error> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let y = gamma.act(x).expect("irrational x has no pole");
    let xs = expand(x, cap);
    let ys = expand(&y, cap);
    let mut first_t: HashMap<QuadIrr<T>, usize> = HashMap::new();
    for st in ys.states.iter() {
        first_t.entry(st.x.clone()).or_insert(st.i);
    }
    let mut best: Option<(usize, usize)> = None;
    for st in xs.states.iter() {
        if let Some(&t) = first_t.get(&st.x) {
            let cand = (st.i, t);
            let better = match best {
                None => true,
                Some((bs, bt)) => {
                    cand.0 + cand.1 < bs + bt || (cand.0 + cand.1 == bs + bt && cand.0 < bs)
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    match best {
        Some((s, t)) => {
            let common_remainder = xs.states[s].x.clone();
            let within_bound = s <= bound.n_floor && t <= bound.n_floor;
            Ok(SyncResult {
                s,
                t,
                common_remainder,
                bound,
                within_bound,
            })
        }
        None => Err(Error::SyncNotFound { cap }),
    }
}

/// Runs the synchronization search with `cap = floor(N(gamma))`. A
/// `SyncNotFound` here is falsification evidence, not a soft failure.
pub fn verify_theorem4<T: Scalar>(gamma: &PglElement<T>, x: &QuadIrr<T>) -> Result<bool, Error> {
    let bound = n_of(gamma);
    let cap = bound.n_floor;
    let r = sync_indices_with_bound(gamma, x, cap, bound)?;
    Ok(r.within_bound)
}

/// Searches `s, t <= depth` for a common remainder of `x` and `y`; on
/// success returns the transformation `gamma_{t,y}^{-1} gamma_{s,x}`, which
/// maps `x` to `y`. `None` is inconclusive, never a disproof.
pub fn equiv_witness<T: Scalar>(
    x: &QuadIrr<T>,
    y: &QuadIrr<T>,
    depth: usize,
) -> Option<PglElement<T>> {
    assert!(!x.is_rational() && !y.is_rational());
    let xs = expand(x, depth);
    let ys = expand(y, depth);
    let mut first_t: HashMap<QuadIrr<T>, usize> = HashMap::new();
    for st in ys.states.iter() {
        first_t.entry(st.x.clone()).or_insert(st.i);
    }
    let mut best: Option<(usize, usize)> = None;
    for st in xs.states.iter() {
        if let Some(&t) = first_t.get(&st.x) {
            let cand = (st.i, t);
            let better = match best {
                None => true,
                Some((bs, bt)) => {
                    cand.0 + cand.1 < bs + bt || (cand.0 + cand.1 == bs + bt && cand.0 < bs)
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.map(|(s, t)| {
        let gx = &xs.states[s].gamma;
        let gy = &ys.states[t].gamma;
        gy.inverse().compose(gx)
    })
}

/// Translation covariance of the classic transformation set: shifting `x` by
/// an integer `b` multiplies the set by the translation, as truncated sets.
pub fn check_translation_covariance<T: Scalar>(
    x: &QuadIrr<T>,
    b: i64,
    depth: usize,
) -> Result<(), CheckViolation> {
    const CHECK: &str = "translation-covariance";
    let t_b = PglElement::translation(&int::<T>(b));
    let shifted: std::collections::BTreeSet<PglElement<T>> =
        gamma_seq(&x.add_int(&int(b)), depth)
            .into_iter()
            .map(|g| g.compose(&t_b))
            .collect();
    let original: std::collections::BTreeSet<PglElement<T>> =
        gamma_seq(x, depth).into_iter().collect();
    if shifted != original {
        return Err(CheckViolation {
            check: CHECK,
            input: format!("{} with shift {}", x, b),
            detail: "shifted set does not match".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::enumerate_by_height;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    type Q = QuadIrr<BigInt>;
    type P = PglElement<BigInt>;

    fn q(a: i64, b: i64, d: i64, c: i64) -> Q {
        Q::new(a.into(), b.into(), d.into(), c.into()).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational<BigInt> {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2() -> Q {
        q(0, 1, 2, 1)
    }

    fn phi() -> Q {
        q(1, 1, 5, 2)
    }

    fn approx(r: &Rational<BigInt>) -> f64 {
        r.to_f64().unwrap()
    }

    #[test]
    fn m_bound_examples() {
        // log_phi(sqrt 5) = 1.672275..., so M(1/2) = that + 2*2 + 3
        let oracle = 5f64.sqrt().ln() / ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let m = m_of(&rat(1, 2));
        assert_eq!(m.r, 2);
        assert!(!m.log_clamped);
        let v = approx(&m.value);
        assert!(v >= oracle + 7.0 - 1e-12);
        assert!(v <= oracle + 7.0 + 2e-6);

        let m0 = m_of(&rat(0, 1));
        assert_eq!(m0.value, Rational::from_integer(BigInt::from(5)));
        assert_eq!(m0.r, 1);
        assert!(m0.log_clamped);

        let m5 = m_of(&rat(5, 1));
        assert_eq!(m5.r, 1);
        let v5 = approx(&m5.value);
        assert!(v5 >= oracle + 5.0 - 1e-12 && v5 <= oracle + 5.0 + 2e-6);

        // min(|A|, B) symmetric cases agree
        assert_eq!(m_of(&rat(-1, 1)).value, m_of(&rat(1, 1)).value);
    }

    #[test]
    fn n_bound_examples() {
        let b = n_of(&P::translation(&BigInt::from(1)));
        assert_eq!(b.n_floor, 3);
        assert!(b.gamma_inf.is_infinity());
        assert!(b.m_forward.is_none());

        let b = n_of(&P::inversion());
        assert_eq!(b.n_value, Rational::from_integer(BigInt::from(5)));
        assert!(b.m_forward.as_ref().unwrap().log_clamped);
        assert!(b.m_backward.as_ref().unwrap().log_clamped);

        let g = P::from_i64s(2, 1, 1, 1).unwrap();
        let b = n_of(&g);
        assert_eq!(
            b.gamma_inf,
            ProjRational::Finite(rat(2, 1))
        );
        assert_eq!(
            b.gamma_inv_inf,
            ProjRational::Finite(rat(-1, 1))
        );
        let mf = approx(&b.m_forward.as_ref().unwrap().value);
        let mb = approx(&b.m_backward.as_ref().unwrap().value);
        assert!((mf - 6.672276).abs() < 1e-4);
        assert!((mb - 6.672276).abs() < 1e-4);
        assert_eq!(b.n_floor, 6);
    }

    #[test]
    fn n_floor_is_at_least_three() {
        for g in enumerate_by_height::<BigInt>(3) {
            assert!(n_of(&g).n_floor >= 3, "gamma = {}", g);
        }
    }

    #[test]
    fn sync_examples() {
        let r = sync_indices(&P::translation(&BigInt::from(1)), &sqrt2(), 5).unwrap();
        assert_eq!((r.s, r.t), (1, 0));
        assert_eq!(r.common_remainder, q(1, 1, 2, 1));
        assert!(r.within_bound);

        let r = sync_indices(&P::inversion(), &sqrt2(), 6).unwrap();
        assert_eq!((r.s, r.t), (0, 1));
        assert_eq!(r.common_remainder, sqrt2());

        let r = sync_indices(&P::identity(), &phi(), 5).unwrap();
        assert_eq!((r.s, r.t), (0, 0));
    }

    #[test]
    fn sync_rejects_rational() {
        assert_eq!(
            sync_indices(&P::identity(), &Q::from_i64(2), 5).unwrap_err(),
            Error::RationalInput
        );
    }

    #[test]
    fn theorem4_examples() {
        let t3 = P::translation(&BigInt::from(3));
        assert_eq!(verify_theorem4(&t3, &sqrt2()), Ok(true));
        let r = sync_indices(&t3, &sqrt2(), 3).unwrap();
        assert!(r.s <= 3 && r.t <= 3);

        assert_eq!(verify_theorem4(&P::inversion(), &phi()), Ok(true));
    }

    #[test]
    fn witness_examples() {
        let y = sqrt2().add_int(&BigInt::from(7));
        let g = equiv_witness(&sqrt2(), &y, 10).expect("equivalent tails");
        assert_eq!(g.act(&sqrt2()).unwrap(), y);

        assert!(equiv_witness(&sqrt2(), &phi(), 40).is_none());

        let g = equiv_witness(&phi(), &phi(), 10).unwrap();
        assert_eq!(g, P::identity());
    }

    #[test]
    fn witness_closes_the_loop() {
        let gamma = P::from_i64s(3, 1, 2, 1).unwrap();
        let y = gamma.act(&sqrt2()).unwrap();
        let w = equiv_witness(&sqrt2(), &y, 30).expect("constructed to be equivalent");
        assert_eq!(w.act(&sqrt2()).unwrap(), y);
        let bound = n_of(&w);
        let r = sync_indices(&w, &sqrt2(), bound.n_floor).unwrap();
        assert!(r.within_bound);
    }

    #[test]
    fn translation_covariance_small() {
        for b in [-3i64, -1, 1, 2, 5] {
            assert!(check_translation_covariance(&sqrt2(), b, 20).is_ok());
            assert!(check_translation_covariance(&phi(), b, 20).is_ok());
        }
    }
}
