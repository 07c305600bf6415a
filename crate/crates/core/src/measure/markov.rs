//! Exhaustive check of the Markov property
//! `E(f⁺f⁻ | 𝔗(L)) = E(f⁺ | 𝔗(L)) E(f⁻ | 𝔗(L))`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use super::mu::{for_each_configuration, MeasureModel};
use crate::cosurface::Split;
use crate::{Error, Result};

type Eval<'a> = Box<dyn Fn(&[usize]) -> f64 + 'a>;

/// A function of the values on finitely many positions of `K`.
pub struct CylinderFunction<'a> {
    support: Vec<usize>,
    eval: Eval<'a>,
}

impl<'a> CylinderFunction<'a> {
    /// `eval` receives the values on `support`, in that order.
    pub fn new(support: Vec<usize>, eval: impl Fn(&[usize]) -> f64 + 'a) -> Self {
        CylinderFunction { support, eval: Box::new(eval) }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(Vec::new(), move |_| c)
    }

    /// `1_{C(s) = g}` for the cell at `position`.
    pub fn indicator(position: usize, g: usize) -> Self {
        Self::new(alloc::vec![position], move |v| if v[0] == g { 1.0 } else { 0.0 })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn eval(&self, config: &[usize]) -> f64 {
        let vals: Vec<usize> = self.support.iter().map(|&i| config[i]).collect();
        (self.eval)(&vals)
    }
}

/// Both sides of the identity for one value of `C|_L`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovCase {
    pub l_values: Vec<usize>,
    /// Probability of the conditioning event.
    pub mass: f64,
    /// `None` when the event has zero mass.
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
}

impl MarkovCase {
    pub fn residual(&self) -> Option<f64> {
        Some((self.lhs? - self.rhs?).abs())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkovReport {
    pub split: Split,
    pub cases: Vec<MarkovCase>,
}

impl MarkovReport {
    pub fn max_residual(&self) -> f64 {
        self.cases.iter().filter_map(MarkovCase::residual).fold(0.0, f64::max)
    }
}

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// Conditional expectations given the values on `L`, by full enumeration
/// of `G^K` under the normalized `μ_K`. `f⁻` may only depend on `K⁻ ∪ L`
/// and `f⁺` on `L ∪ K⁺`.
pub fn markov_check(
    model: &MeasureModel,
    l: Range<usize>,
    f_plus: &CylinderFunction<'_>,
    f_minus: &CylinderFunction<'_>,
) -> Result<MarkovReport> {
    let split = model
        .complex()
        .splits(l.clone(), model.domains())?
        .ok_or_else(|| Error::NoSplit(format!("{l:?} does not split the complex")))?;
    let within = |f: &CylinderFunction<'_>, side: &Range<usize>| {
        f.support().iter().all(|i| l.contains(i) || side.contains(i))
    };
    if !within(f_plus, &split.k_plus) {
        return Err(Error::OutOfRegion("f+ depends on cells outside L ∪ K+".into()));
    }
    if !within(f_minus, &split.k_minus) {
        return Err(Error::OutOfRegion("f- depends on cells outside K- ∪ L".into()));
    }
    // compensated sums of μ, μ f⁺f⁻, μ f⁺, μ f⁻ per value of C|_L
    let mut sums: BTreeMap<Vec<usize>, [Neumaier; 4]> = BTreeMap::new();
    let mut total = Neumaier::default();
    let n = model.group().order();
    for_each_configuration(n, model.complex().len(), |c| {
        let mu = model.density_unchecked(c);
        total.add(mu);
        let (fp, fm) = (f_plus.eval(c), f_minus.eval(c));
        let e = sums.entry(c[l.clone()].to_vec()).or_default();
        e[0].add(mu);
        e[1].add(mu * fp * fm);
        e[2].add(mu * fp);
        e[3].add(mu * fm);
    });
    let total = total.value();
    let cases = sums
        .into_iter()
        .map(|(l_values, sums)| {
            let [m, both, plus, minus] = sums.map(|x| x.value());
            let defined = m > 0.0;
            MarkovCase {
                l_values,
                mass: m / total,
                lhs: defined.then(|| both / m),
                rhs: defined.then(|| (plus / m) * (minus / m)),
            }
        })
        .collect();
    Ok(MarkovReport { split, cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteGroup, Haar};
    use crate::cosurface::{Block, CellKey, Complex, Sign, Surface};
    use crate::measure::HeatSemigroup;
    use alloc::sync::Arc;
    use alloc::vec;

    fn chain_model(group: &str, n: i64) -> MeasureModel {
        let g = Arc::new(FiniteGroup::by_name(group).unwrap());
        let q = HeatSemigroup::standard(g, Haar::Counting).unwrap();
        let pts = (0..=n).map(|x| Surface::unit(CellKey::point(vec![x]), Sign::Plus)).collect();
        let doms = (0..n).map(|x| Block::new(vec![x], vec![x + 1]).unwrap()).collect();
        MeasureModel::new(Complex::new(pts).unwrap(), doms, &q).unwrap()
    }

    #[test]
    fn constants_give_one() {
        let m = chain_model("Z2", 2);
        let r = markov_check(&m, 1..2, &CylinderFunction::constant(1.0), &CylinderFunction::constant(1.0)).unwrap();
        for c in &r.cases {
            assert!((c.lhs.unwrap() - 1.0).abs() < 1e-15 && (c.rhs.unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_indicators() {
        let m = chain_model("Z2", 2);
        let r = markov_check(&m, 1..2, &CylinderFunction::indicator(2, 0), &CylinderFunction::indicator(0, 0)).unwrap();
        assert_eq!(r.cases.len(), 2);
        assert!(r.max_residual() < 1e-12);
        let m = chain_model("S3", 3);
        let fp = CylinderFunction::new(vec![2, 3], |v| (v[0] * 3 + v[1]) as f64);
        let fm = CylinderFunction::indicator(0, 1);
        let r = markov_check(&m, 1..2, &fp, &fm).unwrap();
        assert!(r.max_residual() < 1e-12);
    }

    #[test]
    fn dependence_outside_region_is_rejected() {
        let m = chain_model("Z2", 2);
        let bad = CylinderFunction::indicator(0, 0);
        assert!(matches!(
            markov_check(&m, 1..2, &bad, &CylinderFunction::constant(1.0)),
            Err(Error::OutOfRegion(_))
        ));
    }
}
