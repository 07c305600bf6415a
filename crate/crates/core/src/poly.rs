//! Polynomials in one time variable with coefficients in an algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::rational::{int, Rational};

/// `Σ_d c_d s^d`. Trailing zero coefficients are trimmed, so equality is
/// equality of polynomials.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<A: Algebra> {
    zero: A,
    coeffs: Vec<A>,
}

impl<A: Algebra> Poly<A> {
    pub fn new(template: &A, coeffs: Vec<A>) -> Self {
        let mut p = Poly { zero: template.zero_like(), coeffs };
        p.trim();
        p
    }

    pub fn constant(c: A) -> Self {
        let zero = c.zero_like();
        Self::new(&zero, vec![c])
    }

    /// `c · s^d`.
    pub fn monomial(c: A, d: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); d];
        coeffs.push(c);
        Self::new(&zero, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[A] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> A {
        self.coeffs.get(d).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, s: &Rational) -> A {
        // Horner
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(s).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(d, c)| c.scale(&int(d as i64))).collect();
        Self::new(&self.zero, coeffs)
    }

    /// Antiderivative vanishing at `s = 0`.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![self.zero.clone()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| c.scale(&(int(1) / int(d as i64 + 1)))),
        );
        Self::new(&self.zero, coeffs)
    }
}

impl<A: Algebra> Algebra for Poly<A> {
    fn zero_like(&self) -> Self {
        Poly { zero: self.zero.clone(), coeffs: Vec::new() }
    }

    fn one_like(&self) -> Self {
        Poly::constant(self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|d| self.coeff(d).add(&rhs.coeff(d))).collect();
        Self::new(&self.zero, coeffs)
    }

    fn neg(&self) -> Self {
        Poly { zero: self.zero.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.zero, coeffs)
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.zero, self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.zero.compatible(&other.zero)
    }

    fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}
