//! Coefficient algebras for formal series.

mod group;
mod group_function;
mod matrix;

pub use group::FiniteGroup;
pub use group_function::{GroupFunction, Haar};
pub use matrix::Matrix;

use core::fmt::Debug;

use crate::rational::{Rational, Scalar};

/// An associative unital algebra over the rationals.
///
/// Elements carry their own shape (matrix size, underlying group), so the
/// zero and unit are produced from an existing element. Binary operations
/// assume [`Algebra::compatible`] operands and panic otherwise; the series
/// layer checks compatibility and reports mismatches as errors.
pub trait Algebra: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    /// Whether `self` and `other` live in the same algebra.
    fn compatible(&self, other: &Self) -> bool;

    /// A size used for error reporting (max-abs entry).
    fn magnitude(&self) -> f64;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Equality up to `tol` in [`Algebra::magnitude`].
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).magnitude() <= tol
    }
}

macro_rules! scalar_algebra {
    ($t:ty) => {
        impl Algebra for $t {
            fn zero_like(&self) -> Self {
                <$t as num_traits::Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$t as num_traits::One>::one()
            }
            fn is_zero(&self) -> bool {
                num_traits::Zero::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self.clone() + rhs.clone()
            }
            fn neg(&self) -> Self {
                -self.clone()
            }
            fn mul(&self, rhs: &Self) -> Self {
                self.clone() * rhs.clone()
            }
            fn scale(&self, r: &Rational) -> Self {
                self.clone() * <$t as Scalar>::from_rational(r)
            }
            fn compatible(&self, _: &Self) -> bool {
                true
            }
            fn magnitude(&self) -> f64 {
                Scalar::abs_f64(self)
            }
        }
    };
}

scalar_algebra!(Rational);
scalar_algebra!(f64);
