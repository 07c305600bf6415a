use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Algebra, FiniteGroup};
use crate::rational::{Rational, Scalar};
use crate::{Error, Result};

/// Normalization of the Haar measure `λ` on a finite group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Haar {
    /// `λ` is the uniform probability, `λ({x}) = 1/|G|`.
    #[default]
    Probability,
    /// `λ` is the counting measure; densities are point masses.
    Counting,
}

impl Haar {
    pub fn weight<S: Scalar>(self, order: usize) -> S {
        match self {
            Haar::Probability => S::one() / S::from_int(order as i64),
            Haar::Counting => S::one(),
        }
    }
}

/// A function `G → S`, read as the density of a measure with respect to `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction<S = f64> {
    group: Arc<FiniteGroup>,
    haar: Haar,
    values: Vec<S>,
}

impl<S: Scalar> GroupFunction<S> {
    pub fn new(group: Arc<FiniteGroup>, haar: Haar, values: Vec<S>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::StructureMismatch("one value per group element expected".into()));
        }
        Ok(GroupFunction { group, haar, values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, haar: Haar, f: impl Fn(usize) -> S) -> Self {
        let values = group.elements().map(f).collect();
        GroupFunction { group, haar, values }
    }

    pub fn zero(group: Arc<FiniteGroup>, haar: Haar) -> Self {
        Self::from_fn(group, haar, |_| S::zero())
    }

    /// Density of the Dirac measure at `g`; the convolution unit when `g` is
    /// the identity.
    pub fn delta(group: Arc<FiniteGroup>, haar: Haar, g: usize) -> Self {
        let height = S::one() / haar.weight::<S>(group.order());
        Self::from_fn(group, haar, |x| if x == g { height.clone() } else { S::zero() })
    }

    /// Density of the uniform probability measure.
    pub fn haar_uniform(group: Arc<FiniteGroup>, haar: Haar) -> Self {
        let height = S::one() / (haar.weight::<S>(group.order()) * S::from_int(group.order() as i64));
        Self::from_fn(group, haar, |_| height.clone())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn haar(&self) -> Haar {
        self.haar
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn at(&self, x: usize) -> &S {
        &self.values[x]
    }

    fn same_space(&self, other: &Self) -> bool {
        self.haar == other.haar
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }

    /// `(f ∗ g)(x) = ∫ f(x y⁻¹) g(y) dλ(y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !self.same_space(other) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.convolve_unchecked(other))
    }

    fn convolve_unchecked(&self, other: &Self) -> Self {
        let g = &self.group;
        let w: S = self.haar.weight(g.order());
        let values = g
            .elements()
            .map(|x| {
                let mut acc = S::zero();
                for y in g.elements() {
                    let b = &other.values[y];
                    if !b.is_zero() {
                        acc = acc + self.values[g.mul(x, g.inv(y))].clone() * b.clone();
                    }
                }
                acc * w.clone()
            })
            .collect();
        GroupFunction { group: self.group.clone(), haar: self.haar, values }
    }

    /// Total mass `∫ f dλ`.
    pub fn mass(&self) -> S {
        let w: S = self.haar.weight(self.group.order());
        self.values.iter().fold(S::zero(), |acc, v| acc + v.clone()) * w
    }

    pub fn scale(&self, s: &S) -> Self {
        let values = self.values.iter().map(|v| v.clone() * s.clone()).collect();
        GroupFunction { group: self.group.clone(), haar: self.haar, values }
    }

    pub fn is_class_function(&self) -> bool {
        self.group
            .classes()
            .iter()
            .all(|c| c.iter().all(|&x| self.values[x] == self.values[c[0]]))
    }

    /// Largest spread of values inside a conjugacy class.
    pub fn class_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for c in self.group.classes() {
            for &x in c {
                worst = worst.max((self.values[x].clone() - self.values[c[0]].clone()).abs_f64());
            }
        }
        worst
    }

    /// Same measure, density taken with respect to the other normalization.
    pub fn renormalized(&self, haar: Haar) -> Self {
        let n = self.group.order();
        let factor = self.haar.weight::<S>(n) / haar.weight::<S>(n);
        let values = self.values.iter().map(|v| v.clone() * factor.clone()).collect();
        GroupFunction { group: self.group.clone(), haar, values }
    }
}

impl<S: Scalar> Algebra for GroupFunction<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.group.clone(), self.haar)
    }

    fn one_like(&self) -> Self {
        Self::delta(self.group.clone(), self.haar, 0)
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        assert!(self.same_space(rhs), "group function mismatch");
        let values = self.values.iter().zip(&rhs.values).map(|(a, b)| a.clone() + b.clone()).collect();
        GroupFunction { group: self.group.clone(), haar: self.haar, values }
    }

    fn neg(&self) -> Self {
        let values = self.values.iter().map(|v| -v.clone()).collect();
        GroupFunction { group: self.group.clone(), haar: self.haar, values }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert!(self.same_space(rhs), "group function mismatch");
        self.convolve_unchecked(rhs)
    }

    fn scale(&self, r: &Rational) -> Self {
        GroupFunction::scale(self, &S::from_rational(r))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.same_space(other)
    }

    fn magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.abs_f64()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::vec;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn delta_is_unit() {
        for haar in [Haar::Probability, Haar::Counting] {
            let g = arc(FiniteGroup::symmetric3());
            let f = GroupFunction::from_fn(g.clone(), haar, |x| rat(x as i64 * 3 - 2, 7));
            let d = GroupFunction::delta(g, haar, 0);
            assert_eq!(d.convolve(&f).unwrap(), f);
            assert_eq!(f.convolve(&d).unwrap(), f);
        }
    }

    #[test]
    fn z2_dirac_squares_to_unit() {
        let g = arc(FiniteGroup::cyclic(2).unwrap());
        let d1 = GroupFunction::<Rational>::delta(g.clone(), Haar::Counting, 1);
        let d0 = GroupFunction::<Rational>::delta(g, Haar::Counting, 0);
        assert_eq!(d1.convolve(&d1).unwrap(), d0);
        assert_eq!(d1.values(), &[int(0), int(1)]);
    }

    #[test]
    fn uniform_absorbs() {
        for haar in [Haar::Probability, Haar::Counting] {
            let g = arc(FiniteGroup::quaternion8());
            let f = GroupFunction::from_fn(g.clone(), haar, |x| rat((x * x) as i64 + 1, 3));
            let u = GroupFunction::haar_uniform(g, haar);
            assert_eq!(u.convolve(&f).unwrap(), u.scale(&f.mass()));
            assert_eq!(u.mass(), int(1));
        }
    }

    #[test]
    fn delta_class_function() {
        let g = arc(FiniteGroup::symmetric3());
        assert!(GroupFunction::<Rational>::delta(g.clone(), Haar::Probability, 0).is_class_function());
        assert!(!GroupFunction::<Rational>::delta(g, Haar::Probability, 1).is_class_function());
    }

    #[test]
    fn mismatch_detected() {
        let a = GroupFunction::<f64>::delta(arc(FiniteGroup::cyclic(3).unwrap()), Haar::Counting, 0);
        let b = GroupFunction::<f64>::delta(arc(FiniteGroup::cyclic(4).unwrap()), Haar::Counting, 0);
        assert_eq!(a.convolve(&b), Err(Error::GroupMismatch));
        let c = a.renormalized(Haar::Probability);
        assert_eq!(a.convolve(&c), Err(Error::GroupMismatch));
        assert_eq!(c.values()[0], 3.0);
        assert!(GroupFunction::new(a.group().clone(), Haar::Counting, vec![1.0]).is_err());
    }
}
