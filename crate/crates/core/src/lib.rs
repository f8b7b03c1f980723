//! Exact truncated Laurent q-series over the cyclotomic field Q(ζ₂₄), with
//! theta functions, the universal mock theta functions g and G, Appell–Lerch
//! sums, a partition-rank oracle and a catalogue of identity checks.
//!
//! The arithmetic layers ([`cyclotomic`], [`series`], [`thetas`], [`mock`])
//! are generic over the coefficient type through [`Field`] and [`Scalar`].
//! The checker ([`verify`]) works over the concrete aliases below.

pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod mock;
pub mod partitions;
pub mod series;
pub mod thetas;
pub mod verify;

pub use cyclotomic::{Constant, CycNum};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use series::{Monomial, QSeries};

/// Exact rationals backing the cyclotomic coordinates.
pub type Rational = num_rational::BigRational;

/// An element of Q(ζ₂₄) with exact rational coordinates.
pub type Cyc = CycNum<Rational>;

/// A truncated Laurent series in q over Q(ζ₂₄).
pub type Series = QSeries<Cyc>;

/// A monomial `c·q^e` with `c` in Q(ζ₂₄).
pub type Mono = Monomial<Cyc>;

/// Floating image of the cyclotomic field, for sanity cross-checks only.
pub type CycF64 = CycNum<f64>;
