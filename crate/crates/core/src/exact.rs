//! Exact arithmetic: arbitrary-precision rationals, projective rationals
//! (Q together with a point at infinity), and real quadratic irrationals
//! `(a + b*sqrt(d)) / c` with exact comparison, floor and reciprocal.

use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::scalar::{int, Scalar};

/// Reduced fraction with positive denominator.
pub type Rational<T> = num_rational::Ratio<T>;

/// A rational number or the point at infinity of the projective line.
///
/// Infinity is a single canonical value. It deliberately does not take part
/// in any ordering: every inequality test against it must be spelled out by
/// the caller (the membership predicates treat it as failing both bounds).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjRational<T: Scalar> {
    Finite(Rational<T>),
    Infinity,
}

impl<T: Scalar> ProjRational<T> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational<T>> {
        match self {
            ProjRational::Finite(r) => Some(r),
            ProjRational::Infinity => None,
        }
    }
}

impl<T: Scalar> fmt::Display for ProjRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjRational::Finite(r) => write!(f, "{}", fmt_rational(r)),
            ProjRational::Infinity => write!(f, "inf"),
        }
    }
}

/// Formats a rational in the CLI grammar: `-3` for integers, `355/113` otherwise.
pub fn fmt_rational<T: Scalar>(r: &Rational<T>) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Real quadratic irrational `(a + b*sqrt(d)) / c` in canonical form.
///
/// Canonical means: `c > 0`, `d` squarefree, square factors of `d` absorbed
/// into `b`, the rational case stored with `b = 0, d = 0`, and
/// `gcd(a, b, c) = 1`. Two values are equal exactly when their canonical
/// fields are equal, so `Eq`/`Hash` derive from the fields while `Ord` is the
/// order of the real numbers themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrr<T: Scalar> {
    a: T,
    b: T,
    d: T,
    c: T,
}

/// Splits `n >= 0` as `s^2 * r` with `r` squarefree; returns `(s, r)`.
fn squarefree_split<T: Scalar>(n: T) -> (T, T) {
    let mut s = T::one();
    let mut r = n;
    let mut k: T = int(2);
    while k.clone() * k.clone() <= r {
        let kk = k.clone() * k.clone();
        while (r.clone() % kk.clone()).is_zero() {
            r = r / kk.clone();
            s = s * k.clone();
        }
        k = k + T::one();
    }
    (s, r)
}

/// Sign of `a + b*sqrt(d)` for `d >= 0` not a perfect square unless `b = 0`.
/// Returns -1, 0 or +1.
fn sign_a_plus_b_sqrt<T: Scalar>(a: &T, b: &T, d: &T) -> i32 {
    fn sgn<T: Scalar>(v: &T) -> i32 {
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    }
    if b.is_zero() {
        return sgn(a);
    }
    if a.is_zero() {
        return sgn(b);
    }
    let sa = sgn(a);
    let sb = sgn(b);
    if sa == sb {
        return sa;
    }
    // Opposite signs: compare a^2 against b^2 d. For squarefree d > 1 the two
    // can only tie when both are zero, which is excluded above.
    let aa = a.clone() * a.clone();
    let bbd = b.clone() * b.clone() * d.clone();
    match aa.cmp(&bbd) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl<T: Scalar> QuadIrr<T> {
    /// Builds the canonical representative of `(a + b*sqrt(d)) / c`.
    ///
    /// Rejects `c = 0` and `d < 0`.
    pub fn new(a: T, b: T, d: T, c: T) -> Result<Self, Error> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeDiscriminant);
        }
        let (mut a, mut b, mut d) = (a, b, d);
        if b.is_zero() || d.is_zero() {
            b = T::zero();
            d = T::zero();
        } else {
            let (s, r) = squarefree_split(d);
            b = b * s;
            d = r;
            if d.is_one() {
                a = a + b.clone();
                b = T::zero();
                d = T::zero();
            }
        }
        Ok(Self::reduce(a, b, d, c))
    }

    /// Normalization when `d` is already zero-or-squarefree (> 1) and square
    /// factors are impossible; used on every arithmetic fast path.
    fn reduce(mut a: T, mut b: T, mut d: T, mut c: T) -> Self {
        if b.is_zero() {
            d = T::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a = a / g.clone();
            b = b / g.clone();
            c = c / g;
        }
        QuadIrr { a, b, d, c }
    }

    pub fn from_int(n: T) -> Self {
        QuadIrr {
            a: n,
            b: T::zero(),
            d: T::zero(),
            c: T::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(int(n))
    }

    pub fn from_rational(r: &Rational<T>) -> Self {
        Self::reduce(r.numer().clone(), T::zero(), T::zero(), r.denom().clone())
    }

    pub fn zero() -> Self {
        Self::from_int(T::zero())
    }

    pub fn one() -> Self {
        Self::from_int(T::one())
    }

    /// Accessors for the canonical fields `(a, b, d, c)`.
    pub fn parts(&self) -> (&T, &T, &T, &T) {
        (&self.a, &self.b, &self.d, &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.c.is_one()
    }

    pub fn to_rational(&self) -> Option<Rational<T>> {
        if self.is_rational() {
            Some(Rational::new(self.a.clone(), self.c.clone()))
        } else {
            None
        }
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        sign_a_plus_b_sqrt(&self.a, &self.b, &self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        QuadIrr {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
            c: self.c.clone(),
        }
    }

    /// The common discriminant for an arithmetic combination of two values.
    ///
    /// Ring operations are only defined inside one quadratic field (or with a
    /// rational operand); mixing two distinct irrational fields is a caller
    /// bug, not a runtime condition, hence the panic.
    fn unify_field(&self, other: &Self) -> T {
        if self.d.is_zero() {
            other.d.clone()
        } else if other.d.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!(
                "incompatible quadratic fields sqrt({}) and sqrt({})",
                self.d, other.d
            );
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.unify_field(other);
        Self::reduce(
            self.a.clone() * other.c.clone() + other.a.clone() * self.c.clone(),
            self.b.clone() * other.c.clone() + other.b.clone() * self.c.clone(),
            d,
            self.c.clone() * other.c.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.unify_field(other);
        Self::reduce(
            self.a.clone() * other.a.clone() + self.b.clone() * other.b.clone() * d.clone(),
            self.a.clone() * other.b.clone() + self.b.clone() * other.a.clone(),
            d,
            self.c.clone() * other.c.clone(),
        )
    }

    /// Exact reciprocal, rationalized by the conjugate.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1 / ((a + b sqrt d)/c) = c (a - b sqrt d) / (a^2 - b^2 d)
        let norm = self.a.clone() * self.a.clone()
            - self.b.clone() * self.b.clone() * self.d.clone();
        debug_assert!(!norm.is_zero());
        Ok(Self::reduce(
            self.c.clone() * self.a.clone(),
            -(self.c.clone() * self.b.clone()),
            self.d.clone(),
            norm,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale_int(&self, k: &T) -> Self {
        Self::reduce(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.d.clone(),
            self.c.clone(),
        )
    }

    pub fn add_int(&self, k: &T) -> Self {
        Self::reduce(
            self.a.clone() + k.clone() * self.c.clone(),
            self.b.clone(),
            self.d.clone(),
            self.c.clone(),
        )
    }

    pub fn add_rational(&self, r: &Rational<T>) -> Self {
        self.add(&Self::from_rational(r))
    }

    pub fn sub_rational(&self, r: &Rational<T>) -> Self {
        self.sub(&Self::from_rational(r))
    }

    /// Exact floor: the unique integer `n` with `n <= x < n + 1`.
    pub fn floor(&self) -> T {
        let num_floor = if self.b.is_zero() {
            self.a.clone()
        } else {
            // floor(b sqrt d): for b < 0 the root is irrational, so the
            // ceiling is isqrt + 1 and the floor of the negative is its
            // negation.
            let s = (self.b.clone() * self.b.clone() * self.d.clone()).sqrt();
            if self.b.is_negative() {
                self.a.clone() - s - T::one()
            } else {
                self.a.clone() + s
            }
        };
        num_floor.div_floor(&self.c)
    }

    pub fn fract(&self) -> Self {
        self.add_int(&-self.floor())
    }

    pub fn cmp_rational(&self, r: &Rational<T>) -> Ordering {
        self.cmp(&Self::from_rational(r))
    }

    pub fn cmp_int(&self, n: &T) -> Ordering {
        self.cmp(&Self::from_int(n.clone()))
    }
}

impl<T: Scalar> Ord for QuadIrr<T> {
    /// Exact total-order comparison by sign analysis; works across distinct
    /// quadratic fields.
    fn cmp(&self, other: &Self) -> Ordering {
        // x - y has the sign of A + B sqrt(d1) - C sqrt(d2) with:
        let a_term = self.a.clone() * other.c.clone() - other.a.clone() * self.c.clone();
        let b_term = self.b.clone() * other.c.clone();
        let c_term = other.b.clone() * self.c.clone();

        let sig = if c_term.is_zero() {
            sign_a_plus_b_sqrt(&a_term, &b_term, &self.d)
        } else if b_term.is_zero() {
            sign_a_plus_b_sqrt(&a_term, &-c_term, &other.d)
        } else if self.d == other.d {
            sign_a_plus_b_sqrt(&a_term, &(b_term - c_term), &self.d)
        } else {
            // u = A + B sqrt(d1), w = C sqrt(d2); compare u with w.
            let su = sign_a_plus_b_sqrt(&a_term, &b_term, &self.d);
            let sw = if c_term.is_negative() { -1 } else { 1 };
            if su != sw {
                su.cmp(&sw) as i32
            } else {
                // Same strict sign: compare squares, u^2 = (A^2 + B^2 d1) + 2AB sqrt(d1).
                let u2_rat = a_term.clone() * a_term.clone()
                    + b_term.clone() * b_term.clone() * self.d.clone()
                    - c_term.clone() * c_term.clone() * other.d.clone();
                let u2_irr = int::<T>(2) * a_term * b_term;
                let s2 = sign_a_plus_b_sqrt(&u2_rat, &u2_irr, &self.d);
                debug_assert!(s2 != 0, "distinct squarefree fields cannot collide");
                if su > 0 {
                    s2
                } else {
                    -s2
                }
            }
        };
        sig.cmp(&0)
    }
}

impl<T: Scalar> PartialOrd for QuadIrr<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> fmt::Display for QuadIrr<T> {
    /// CLI grammar: `-3`, `355/113`, or `quad(a,b,d,c)` for `(a + b sqrt d)/c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            write!(f, "quad({},{},{},{})", self.a, self.b, self.d, self.c)
        }
    }
}

/// Canonical finite continued fraction of a rational, by Euclidean division.
///
/// The last partial quotient is >= 2 unless the expansion has length one, so
/// the number of convergents of `alpha` is exactly the length of the result.
pub fn rational_cf<T: Scalar>(alpha: &Rational<T>) -> Vec<T> {
    let mut num = alpha.numer().clone();
    let mut den = alpha.denom().clone();
    let mut out = Vec::new();
    loop {
        let q = num.div_floor(&den);
        let r = num - q.clone() * den.clone();
        out.push(q);
        if r.is_zero() {
            return out;
        }
        num = den;
        den = r;
    }
}
