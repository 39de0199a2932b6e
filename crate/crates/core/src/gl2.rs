//! Elements of PGL(2, Z): integer 2x2 matrices of determinant +-1 modulo
//! global sign, their composition, inversion, Moebius action on quadratic
//! irrationals and projective rationals, and exhaustive enumeration up to a
//! height bound.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::exact::{ProjRational, QuadIrr, Rational};
use crate::scalar::{int, Scalar};

/// A class `{M, -M}` of an integer matrix with `det M = +-1`, stored as the
/// canonical representative whose bottom row `(c, d)` is lexicographically
/// positive: `c > 0`, or `c = 0` and `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PglElement<T: Scalar> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Scalar> PglElement<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self, Error> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det.abs() != T::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_i64s(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    fn canonical(a: T, b: T, c: T, d: T) -> Self {
        if c.is_negative() || (c.is_zero() && d.is_negative()) {
            PglElement {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            PglElement { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        PglElement {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// The inversion `x -> 1/x`.
    pub fn inversion() -> Self {
        PglElement {
            a: T::zero(),
            b: T::one(),
            c: T::one(),
            d: T::zero(),
        }
    }

    /// The translation power `x -> x + n`, computed directly (not by
    /// repeated multiplication, since `n` can be a large partial quotient).
    pub fn translation(n: &T) -> Self {
        Self::canonical(T::one(), n.clone(), T::zero(), T::one())
    }

    /// The combination `inversion . translation(-n)`, i.e. `x -> 1/(x - n)`.
    pub fn gauss_step(n: &T) -> Self {
        Self::canonical(T::zero(), T::one(), T::one(), -n.clone())
    }

    pub fn entries(&self) -> (&T, &T, &T, &T) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn to_array(&self) -> [[T; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ]
    }

    /// Determinant, +1 or -1; well defined on the sign class.
    pub fn det(&self) -> i32 {
        let det = self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone();
        if det.is_one() {
            1
        } else {
            -1
        }
    }

    /// Canonical representative of the product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::canonical(
            self.a.clone() * other.a.clone() + self.b.clone() * other.c.clone(),
            self.a.clone() * other.b.clone() + self.b.clone() * other.d.clone(),
            self.c.clone() * other.a.clone() + self.d.clone() * other.c.clone(),
            self.c.clone() * other.b.clone() + self.d.clone() * other.d.clone(),
        )
    }

    /// Canonical representative of the inverse (the adjugate, since the
    /// determinant is a unit).
    pub fn inverse(&self) -> Self {
        Self::canonical(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    /// Exact Moebius image `(a x + b) / (c x + d)`; independent of the sign
    /// representative. Fails only on a rational `x` at the pole.
    pub fn act(&self, x: &QuadIrr<T>) -> Result<QuadIrr<T>, Error> {
        let num = x.scale_int(&self.a).add_int(&self.b);
        let den = x.scale_int(&self.c).add_int(&self.d);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        num.div(&den)
    }

    /// Action on the projective rational line; total.
    pub fn act_proj(&self, x: &ProjRational<T>) -> ProjRational<T> {
        match x {
            ProjRational::Infinity => self.image_of_infinity(),
            ProjRational::Finite(r) => {
                let num = self.a.clone() * r.numer().clone() + self.b.clone() * r.denom().clone();
                let den = self.c.clone() * r.numer().clone() + self.d.clone() * r.denom().clone();
                if den.is_zero() {
                    ProjRational::Infinity
                } else {
                    ProjRational::Finite(Rational::new(num, den))
                }
            }
        }
    }

    /// `gamma(infinity) = a/c`, or infinity when `c = 0`.
    pub fn image_of_infinity(&self) -> ProjRational<T> {
        if self.c.is_zero() {
            ProjRational::Infinity
        } else {
            ProjRational::Finite(Rational::new(self.a.clone(), self.c.clone()))
        }
    }

    /// Max absolute value of the entries; invariant under the sign class.
    pub fn height(&self) -> T {
        let mut h = self.a.abs();
        for e in [&self.b, &self.c, &self.d] {
            let v = e.abs();
            if v > h {
                h = v;
            }
        }
        h
    }
}

impl<T: Scalar> fmt::Display for PglElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Exactly the canonical classes with height at most `h`, sorted.
///
/// Exhaustive scan of the `(2h+1)^4` box filtered by the determinant
/// condition; `h <= 25` keeps this around 6.8M cheap integer checks.
pub fn enumerate_by_height<T: Scalar>(h: i64) -> Vec<PglElement<T>> {
    assert!(h >= 1, "height bound must be positive");
    let mut seen: BTreeSet<[i64; 4]> = BTreeSet::new();
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                for d in -h..=h {
                    let det = a * d - b * c;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    let key = if c < 0 || (c == 0 && d < 0) {
                        [-a, -b, -c, -d]
                    } else {
                        [a, b, c, d]
                    };
                    seen.insert(key);
                }
            }
        }
    }
    seen.into_iter()
        .map(|[a, b, c, d]| PglElement {
            a: int(a),
            b: int(b),
            c: int(c),
            d: int(d),
        })
        .collect()
}
