//! Numeric traits shared by the generic layers.
//!
//! [`Scalar`] is what the cyclotomic coordinates are built from: any
//! `num-traits` number whose references support arithmetic (exact rationals
//! or floats). [`Field`] is what a [`QSeries`](crate::QSeries) needs from its
//! coefficients.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, NumAssignRef, RefNum, Signed};

/// Coordinate type of a [`CycNum`](crate::CycNum).
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Division; the caller guarantees `other` is nonzero.
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn abs_ref(&self) -> Self;
}

impl<T> Scalar for T
where
    T: Num
        + NumAssignRef
        + Neg<Output = T>
        + Signed
        + FromPrimitive
        + Clone
        + Debug
        + PartialEq
        + Send
        + Sync
        + 'static,
    for<'a> &'a T: RefNum<T>,
{
    fn zero() -> Self {
        T::zero()
    }
    fn one() -> Self {
        T::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        <T as FromPrimitive>::from_i64(n).expect("integer is representable")
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn abs_ref(&self) -> Self {
        Signed::abs(self)
    }
}

/// Coefficient field of a truncated q-series.
///
/// Only `try_inv` can fail; every other operation is total.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.sub_ref(other);
    }

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power; negative exponents need an invertible base.
    fn pow_i(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.try_inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Some(acc)
    }
}

macro_rules! scalar_field {
    ($($t:ty),*) => {$(
        impl Field for $t {
            fn zero() -> Self { <$t as Scalar>::zero() }
            fn one() -> Self { <$t as Scalar>::one() }
            fn is_zero(&self) -> bool { Scalar::is_zero(self) }
            fn from_i64(n: i64) -> Self { <$t as Scalar>::from_i64(n) }
            fn add_ref(&self, other: &Self) -> Self { Scalar::add_ref(self, other) }
            fn sub_ref(&self, other: &Self) -> Self { Scalar::sub_ref(self, other) }
            fn mul_ref(&self, other: &Self) -> Self { Scalar::mul_ref(self, other) }
            fn neg_ref(&self) -> Self { Scalar::neg_ref(self) }
            fn add_assign_ref(&mut self, other: &Self) { Scalar::add_assign_ref(self, other) }
            fn sub_assign_ref(&mut self, other: &Self) { Scalar::sub_assign_ref(self, other) }
            fn try_inv(&self) -> Option<Self> {
                if Scalar::is_zero(self) {
                    None
                } else {
                    Some(Scalar::div_ref(&<$t as Scalar>::one(), self))
                }
            }
        }
    )*};
}

scalar_field!(Ratio<BigInt>, Ratio<i64>, f64);
