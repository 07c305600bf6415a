//! Truncated formal series over a graded groupoid.
//!
//! A series `a = Σ_{i ∈ I} a_i` assigns a coefficient of an [`Algebra`] to
//! each index of grade at most the truncation order `N`. Multiplication is
//! the graded convolution
//!
//! ```text
//! (a b)_k = Σ_{i ∗ j = k} a_i b_j
//! ```
//!
//! with terms of grade above `N` dropped. Series with a zero coefficient at
//! the neutral element are nilpotent (`a^{N+1} = 0`), so the exponential,
//! logarithm and geometric inverse are finite sums and `exp` is a bijection
//! from those series onto the unital ones.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Matrix};
use crate::groupoid::GradedGroupoid;
use crate::rational::{factorial, int, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct FormalSeries<G: GradedGroupoid, A: Algebra> {
    groupoid: G,
    trunc: usize,
    unit: A,
    coeffs: BTreeMap<G::Element, A>,
}

impl<G: GradedGroupoid, A: Algebra> FormalSeries<G, A> {
    /// The zero series; `unit` fixes the coefficient algebra (its value is
    /// replaced by the algebra unit).
    pub fn zero(groupoid: G, trunc: usize, unit: &A) -> Self {
        FormalSeries { groupoid, trunc, unit: unit.one_like(), coeffs: BTreeMap::new() }
    }

    pub fn one(groupoid: G, trunc: usize, unit: &A) -> Self {
        let mut s = Self::zero(groupoid, trunc, unit);
        let e = s.groupoid.neutral();
        s.coeffs.insert(e, unit.one_like());
        s
    }

    /// Builds a series from `(index, coefficient)` terms. Repeated indexes are
    /// summed; indexes of grade above `trunc` are dropped.
    pub fn from_terms(
        groupoid: G,
        trunc: usize,
        unit: &A,
        terms: impl IntoIterator<Item = (G::Element, A)>,
    ) -> Result<Self> {
        let mut s = Self::zero(groupoid, trunc, unit);
        for (i, c) in terms {
            if !c.compatible(&s.unit) {
                return Err(Error::StructureMismatch("coefficient algebra".into()));
            }
            let grade = s.groupoid.ord(&i)?;
            if grade <= trunc {
                s.accumulate(i, c);
            }
        }
        Ok(s)
    }

    pub fn monomial(groupoid: G, trunc: usize, i: G::Element, c: A) -> Result<Self> {
        let unit = c.one_like();
        Self::from_terms(groupoid, trunc, &unit, [(i, c)])
    }

    fn accumulate(&mut self, i: G::Element, c: A) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&i) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.coeffs.insert(i, sum);
                }
            }
            None => {
                self.coeffs.insert(i, c);
            }
        }
    }

    pub fn groupoid(&self) -> &G {
        &self.groupoid
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn unit(&self) -> &A {
        &self.unit
    }

    pub fn coeff(&self, i: &G::Element) -> A {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.unit.zero_like())
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (&G::Element, &A)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn neutral_coeff(&self) -> A {
        self.coeff(&self.groupoid.neutral())
    }

    /// Coefficient at `e` equals the algebra unit.
    pub fn is_unital(&self) -> bool {
        self.neutral_coeff() == self.unit
    }

    pub fn has_zero_neutral(&self) -> bool {
        self.neutral_coeff().is_zero()
    }

    /// Terms of grade exactly `m`.
    pub fn grade_part(&self, m: usize) -> BTreeMap<G::Element, A> {
        self.coeffs
            .iter()
            .filter(|(i, _)| self.groupoid.ord(i).ok() == Some(m))
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.groupoid != other.groupoid {
            return Err(Error::StructureMismatch("different groupoids".into()));
        }
        if self.trunc != other.trunc {
            return Err(Error::StructureMismatch(format!(
                "truncation orders {} and {}",
                self.trunc, other.trunc
            )));
        }
        if !self.unit.compatible(&other.unit) {
            return Err(Error::StructureMismatch("coefficient algebras differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.accumulate(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// Applies `f` to every coefficient; `f` must be additive and map zero to
    /// zero for the result to be meaningful.
    pub fn map(&self, f: impl Fn(&A) -> A) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FormalSeries { groupoid: self.groupoid.clone(), trunc: self.trunc, unit: self.unit.clone(), coeffs }
    }

    /// Left-multiplies every coefficient by `c`.
    pub fn mul_coeff_left(&self, c: &A) -> Self {
        self.map(|x| c.mul(x))
    }

    /// Graded convolution product, truncated at `N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.groupoid.clone(), self.trunc, &self.unit);
        let graded: Vec<(usize, &G::Element, &A)> = other
            .coeffs
            .iter()
            .map(|(j, b)| (self.groupoid.ord(j).unwrap_or(usize::MAX), j, b))
            .collect();
        for (i, a) in &self.coeffs {
            let gi = self.groupoid.ord(i)?;
            for &(gj, j, b) in &graded {
                if gi + gj > self.trunc {
                    continue;
                }
                if let Some(k) = self.groupoid.compose(i, j) {
                    out.accumulate(k, a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.groupoid.clone(), self.trunc, &self.unit);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn require_zero_neutral(&self) -> Result<()> {
        if self.has_zero_neutral() {
            Ok(())
        } else {
            Err(Error::NonzeroNeutral)
        }
    }

    fn require_unital(&self) -> Result<()> {
        if self.is_unital() {
            Ok(())
        } else {
            Err(Error::NotUnital(format!("coefficient at e is {:?}", self.neutral_coeff())))
        }
    }

    /// Inverse of `u = 1 + a` by the geometric series `Σ_{k ≤ N} (-a)^k`.
    pub fn inverse(&self) -> Result<Self> {
        self.require_unital()?;
        let one = Self::one(self.groupoid.clone(), self.trunc, &self.unit);
        let minus_a = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.trunc {
            power = power.mul(&minus_a)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// `exp(a) = Σ_{k ≤ N} a^k / k!` for `a` with zero neutral coefficient.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_neutral()?;
        let mut out = Self::one(self.groupoid.clone(), self.trunc, &self.unit);
        let mut power = out.clone();
        for k in 1..=self.trunc as u32 {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&(Rational::from_integer(1.into()) / factorial(k))))?;
        }
        Ok(out)
    }

    /// `log(1 + a) = Σ_{k ≤ N} (-1)^{k+1} a^k / k`.
    pub fn log(&self) -> Result<Self> {
        self.require_unital()?;
        let one = Self::one(self.groupoid.clone(), self.trunc, &self.unit);
        let a = self.sub(&one)?;
        let mut out = Self::zero(self.groupoid.clone(), self.trunc, &self.unit);
        let mut power = one;
        for k in 1..=self.trunc as i64 {
            power = power.mul(&a)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&(int(sign) / int(k))))?;
        }
        Ok(out)
    }

    /// Largest coefficient magnitude among terms of grade `m`.
    pub fn grade_magnitude(&self, m: usize) -> f64 {
        self.grade_part(m).values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

/// Element `(g, a)` of `G ⋉ (1 + A)` where `G` is a group of invertible
/// matrices acting on the coefficients by conjugation `a ↦ g a g⁻¹`.
#[derive(Clone, PartialEq, Debug)]
pub struct SemidirectElement<G: GradedGroupoid, S: Scalar> {
    g: Matrix<S>,
    g_inv: Matrix<S>,
    a: FormalSeries<G, Matrix<S>>,
}

impl<G: GradedGroupoid, S: Scalar> SemidirectElement<G, S> {
    pub fn new(g: Matrix<S>, a: FormalSeries<G, Matrix<S>>) -> Result<Self> {
        if g.size() != a.unit().size() {
            return Err(Error::StructureMismatch("matrix sizes differ".into()));
        }
        a.require_zero_neutral()?;
        let g_inv = g.inverse()?;
        Ok(SemidirectElement { g, g_inv, a })
    }

    pub fn identity(groupoid: G, trunc: usize, n: usize) -> Self {
        let unit = Matrix::identity(n);
        SemidirectElement {
            g: unit.clone(),
            g_inv: unit.clone(),
            a: FormalSeries::zero(groupoid, trunc, &unit),
        }
    }

    pub fn group_part(&self) -> &Matrix<S> {
        &self.g
    }

    pub fn series_part(&self) -> &FormalSeries<G, Matrix<S>> {
        &self.a
    }

    /// Coefficientwise conjugation by the group part.
    pub fn act(&self, series: &FormalSeries<G, Matrix<S>>) -> FormalSeries<G, Matrix<S>> {
        series.map(|c| self.g.mul(c).mul(&self.g_inv))
    }

    fn unital_part(&self) -> Result<FormalSeries<G, Matrix<S>>> {
        let one = FormalSeries::one(self.a.groupoid().clone(), self.a.trunc(), self.a.unit());
        one.add(&self.a)
    }

    fn from_unital(g: Matrix<S>, g_inv: Matrix<S>, u: FormalSeries<G, Matrix<S>>) -> Result<Self> {
        let one = FormalSeries::one(u.groupoid().clone(), u.trunc(), u.unit());
        Ok(SemidirectElement { g, g_inv, a: u.sub(&one)? })
    }

    /// `(g, 1+a)(g', 1+a') = (g g', (1+a) · g(1+a')g⁻¹)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.g.size() != other.g.size() {
            return Err(Error::StructureMismatch("matrix sizes differ".into()));
        }
        let u = self.unital_part()?.mul(&self.act(&other.unital_part()?))?;
        Self::from_unital(self.g.mul(&other.g), other.g_inv.mul(&self.g_inv), u)
    }

    /// `(g, 1+a)⁻¹ = (g⁻¹, g⁻¹ (1+a)⁻¹ g)`.
    pub fn inverse(&self) -> Result<Self> {
        let u_inv = self.unital_part()?.inverse()?;
        let conj = u_inv.map(|c| self.g_inv.mul(c).mul(&self.g));
        Self::from_unital(self.g_inv.clone(), self.g.clone(), conj)
    }

    pub fn is_identity(&self) -> bool {
        self.g == Matrix::identity(self.g.size()) && self.a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{make_interval_groupoid, make_nat_monoid, Interval, NatMonoid};
    use crate::rational::rat;
    use alloc::vec;

    type Q = Rational;

    fn q_series(trunc: usize, coeffs: &[(usize, Q)]) -> FormalSeries<NatMonoid, Q> {
        FormalSeries::from_terms(make_nat_monoid(), trunc, &int(1), coeffs.iter().cloned()).unwrap()
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let a = q_series(3, &[(0, int(1)), (1, int(1))]);
        let b = q_series(3, &[(0, int(1)), (1, int(-1))]);
        assert_eq!(a.mul(&b).unwrap(), q_series(3, &[(0, int(1)), (2, int(-1))]));
    }

    #[test]
    fn interval_products() {
        let g = make_interval_groupoid(0, 3).unwrap();
        let a = FormalSeries::monomial(g, 3, Interval::span(1, 2), int(2)).unwrap();
        let b = FormalSeries::monomial(g, 3, Interval::span(0, 1), int(5)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), FormalSeries::monomial(g, 3, Interval::span(0, 2), int(10)).unwrap());
        assert!(b.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(q_series(3, &[(0, int(1))]).inverse().unwrap(), q_series(3, &[(0, int(1))]));
        let u = q_series(3, &[(0, int(1)), (1, int(1))]);
        let inv = u.inverse().unwrap();
        assert_eq!(inv, q_series(3, &[(0, int(1)), (1, int(-1)), (2, int(1)), (3, int(-1))]));
        assert!(u.mul(&inv).unwrap().is_unital());
        assert_eq!(u.mul(&inv).unwrap(), q_series(3, &[(0, int(1))]));
        assert!(q_series(3, &[(0, int(2))]).inverse().is_err());
    }

    #[test]
    fn matrix_geometric_inverse() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(3)]]).unwrap();
        let one = Matrix::identity(2);
        let u = FormalSeries::from_terms(make_nat_monoid(), 2, &one, [(0, one.clone()), (1, a.clone())]).unwrap();
        let expected = FormalSeries::from_terms(
            make_nat_monoid(),
            2,
            &one,
            [(0, one.clone()), (1, Algebra::neg(&a)), (2, a.mul(&a))],
        )
        .unwrap();
        assert_eq!(u.inverse().unwrap(), expected);
    }

    #[test]
    fn exp_and_log_of_q() {
        assert_eq!(q_series(3, &[]).exp().unwrap(), q_series(3, &[(0, int(1))]));
        let q = q_series(3, &[(1, int(1))]);
        assert_eq!(
            q.exp().unwrap(),
            q_series(3, &[(0, int(1)), (1, int(1)), (2, rat(1, 2)), (3, rat(1, 6))])
        );
        let u = q_series(3, &[(0, int(1)), (1, int(1))]);
        assert_eq!(u.log().unwrap(), q_series(3, &[(1, int(1)), (2, rat(-1, 2)), (3, rat(1, 3))]));
        assert_eq!(q.exp().unwrap().log().unwrap(), q);
        assert_eq!(u.log().unwrap().exp().unwrap(), u);
        assert_eq!(u.exp(), Err(Error::NonzeroNeutral));
        assert!(q.log().is_err());
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = q_series(3, &[(1, int(1))]);
        let b = q_series(4, &[(1, int(1))]);
        assert!(matches!(a.mul(&b), Err(Error::StructureMismatch(_))));
        assert!(matches!(a.add(&b), Err(Error::StructureMismatch(_))));
        // Terms beyond the truncation are dropped silently.
        assert!(q_series(2, &[(3, int(1))]).is_zero());
        let g = make_interval_groupoid(0, 2).unwrap();
        assert!(FormalSeries::from_terms(g, 2, &int(1), [(Interval::span(0, 5), int(1))]).is_err());
    }

    #[test]
    fn nilpotent_beyond_truncation() {
        let a = q_series(4, &[(1, int(3)), (2, int(-1))]);
        assert!(a.pow(5).unwrap().is_zero());
        assert!(!a.pow(4).unwrap().is_zero());
    }

    #[test]
    fn semidirect_conjugation() {
        let g = Matrix::diag(vec![int(2), int(1)]);
        let a = FormalSeries::monomial(make_nat_monoid(), 3, 1, Matrix::<Q>::unit(2, 0, 1)).unwrap();
        let x = SemidirectElement::new(g, a.clone()).unwrap();
        assert_eq!(x.act(&a), a.scale(&int(2)));
        let id = SemidirectElement::identity(make_nat_monoid(), 3, 2);
        assert_eq!(id.mul(&x).unwrap(), x);
        assert!(x.mul(&x.inverse().unwrap()).unwrap().is_identity());
        assert!(x.inverse().unwrap().mul(&x).unwrap().is_identity());
        assert_eq!(
            SemidirectElement::new(Matrix::<Q>::zeros(2), a).unwrap_err(),
            Error::Singular
        );
    }
}
