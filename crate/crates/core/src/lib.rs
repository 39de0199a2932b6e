//! Exact continued-fraction reduction over PGL(2, Z).
//!
//! The crate implements, in exact arbitrary-precision arithmetic:
//!
//! - the classic positive continued-fraction algorithm with its convergents,
//!   transformation matrices and reduction deltas ([`cf_classic`]);
//! - the slow additive variant that moves by `x + 1`, `1/x - 1`, `x - 1` and
//!   its explicit transformation set ([`cf_slow`]);
//! - the description of both transformation sets by linear inequalities on
//!   the actions at infinity and at `x`, verifiable by brute force over all
//!   matrices up to a height bound ([`membership`]);
//! - synchronization bounds `N(gamma)` after which the expansions of `x` and
//!   `gamma(x)` provably coincide, and equivalence witnesses ([`hurwitz`]).
//!
//! Everything is generic over the integer scalar through [`scalar::Scalar`];
//! the aliases below fix the `BigInt` backend that the verification suite
//! and the CLI use. There are no floating-point code paths: comparisons of
//! quadratic irrationals are decided by integer sign analysis, and the one
//! logarithm in the synchronization bound is a certified rational enclosure.

pub mod cf_classic;
pub mod cf_slow;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod gl2;
pub mod hurwitz;
pub mod membership;
pub mod scalar;

pub use error::{CheckViolation, Error};
pub use exact::{ProjRational, QuadIrr, Rational};
pub use gl2::PglElement;
pub use scalar::Scalar;

/// Default arbitrary-precision backend.
pub type Int = num_bigint::BigInt;
/// Reduced fraction over [`Int`].
pub type Rat = Rational<Int>;
/// Quadratic irrational over [`Int`].
pub type Quad = QuadIrr<Int>;
/// PGL(2, Z) element over [`Int`].
pub type Pgl = PglElement<Int>;
/// Projective rational over [`Int`].
pub type ProjRat = ProjRational<Int>;
