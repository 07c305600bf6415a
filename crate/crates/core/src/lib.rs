//! Graded groupoid formal series and lattice cosurface measures.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`groupoid`]: graded groupoids of indexes (the monoid ℕ, intervals of ℤ,
//!   boxes of ℤ^d glued along a time axis).
//! - [`algebra`]: coefficient algebras. Exact rational matrices, finite groups
//!   given by Cayley tables and their convolution algebras.
//! - [`series`]: truncated formal series over a graded groupoid, the group
//!   `1 + A` with its exponential and logarithm, and the semidirect product
//!   with an invertible matrix group.
//! - [`product_integral`]: the time-ordered exponential of a polynomial path,
//!   by Euler products, by exact grade recursion and by simplex integrals.
//! - [`cosurface`]: oriented cubical cells, ordered complexes, cosurfaces,
//!   lattice holonomy and dimension extension.
//! - [`measure`]: convolution semigroups, the configuration measure of a
//!   saturated complex, Markov checks, reordering, cutting and pasting of
//!   complexes for cobordism, and measure-valued series.
//! - [`nonregular`]: the path of diffeomorphisms of `(0, 1)` whose logarithmic
//!   derivative equation has no solution in the group.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cosurface;
mod error;
pub mod groupoid;
pub mod measure;
pub mod nonregular;
pub mod poly;
pub mod product_integral;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
