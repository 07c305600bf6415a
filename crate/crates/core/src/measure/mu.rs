//! The configuration measure `μ_K^Q(C) = Π_i q_{|A_i|}(φ_{A_i}∘C(K))`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::semigroup::Semigroup;
use crate::algebra::{FiniteGroup, Haar};
use crate::cosurface::{Block, Complex, Sign};
use crate::{Error, Result};

/// `μ_K^Q` for a saturated complex and its domains, with the `φ_A`
/// incidences and the densities `q_{|A_i|}` precomputed.
#[derive(Clone, Debug)]
pub struct MeasureModel {
    group: Arc<FiniteGroup>,
    haar: Haar,
    complex: Complex,
    domains: Vec<Block>,
    incidences: Vec<Vec<(usize, Sign)>>,
    densities: Vec<Vec<f64>>,
}

impl MeasureModel {
    pub fn new(complex: Complex, domains: Vec<Block>, q: &impl Semigroup) -> Result<Self> {
        complex.check_saturated(&domains)?;
        let incidences = domains.iter().map(|a| complex.incidence(a)).collect::<Result<Vec<_>>>()?;
        let densities = domains
            .iter()
            .map(|a| Ok(q.density(a.volume() as f64)?.values().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasureModel { group: q.group().clone(), haar: q.haar(), complex, domains, incidences, densities })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn domains(&self) -> &[Block] {
        &self.domains
    }

    /// `φ_{A_i}` incidences: positions in `K` with their signs.
    pub fn incidence(&self, i: usize) -> &[(usize, Sign)] {
        &self.incidences[i]
    }

    fn check(&self, config: &[usize]) -> Result<()> {
        if config.len() != self.complex.len() {
            return Err(Error::StructureMismatch(format!(
                "configuration of length {} for a {}-complex",
                config.len(),
                self.complex.len()
            )));
        }
        if let Some(&x) = config.iter().find(|&&x| x >= self.group.order()) {
            return Err(Error::InvalidElement(format!("{x}")));
        }
        Ok(())
    }

    /// `φ_{A_i}∘C(K)`: the `K`-ordered product of `C(s)^{±1}` over `s ⊂ ∂A_i`.
    pub fn holonomy(&self, i: usize, config: &[usize]) -> usize {
        let g = &self.group;
        self.incidences[i].iter().fold(g.identity(), |acc, &(j, s)| {
            g.mul(acc, if s == Sign::Plus { config[j] } else { g.inv(config[j]) })
        })
    }

    /// Unnormalized density `μ_K^Q(C)`.
    pub fn density(&self, config: &[usize]) -> Result<f64> {
        self.check(config)?;
        Ok(self.density_unchecked(config))
    }

    pub(crate) fn density_unchecked(&self, config: &[usize]) -> f64 {
        (0..self.domains.len()).map(|i| self.densities[i][self.holonomy(i, config)]).product()
    }

    /// Haar weight of one configuration, `λ^{⊗K}({C})`.
    pub fn weight(&self) -> f64 {
        libm::pow(self.haar.weight::<f64>(self.group.order()), self.complex.len() as f64)
    }

    /// `∫ μ_K dλ^{⊗K}` by enumeration of `G^K`.
    pub fn total_mass(&self) -> f64 {
        let mut total = 0.0;
        for_each_configuration(self.group.order(), self.complex.len(), |c| total += self.density_unchecked(c));
        total * self.weight()
    }

    /// Probability of the configuration `C` after normalization.
    pub fn probability(&self, config: &[usize]) -> Result<f64> {
        Ok(self.density(config)? * self.weight() / self.total_mass())
    }

    /// Mass of the configurations agreeing with `fixed` (position, value),
    /// integrated over the other positions; a kernel in the fixed values.
    pub fn kernel_mass(&self, fixed: &[(usize, usize)]) -> Result<f64> {
        let mut free: Vec<usize> = (0..self.complex.len()).collect();
        let mut config = vec![0; self.complex.len()];
        for &(p, v) in fixed {
            if p >= config.len() || v >= self.group.order() {
                return Err(Error::OutOfRegion(format!("fixed value {v} at position {p}")));
            }
            config[p] = v;
            free.retain(|&q| q != p);
        }
        let mut total = 0.0;
        for_each_configuration(self.group.order(), free.len(), |vals| {
            for (&p, &v) in free.iter().zip(vals) {
                config[p] = v;
            }
            total += self.density_unchecked(&config);
        });
        Ok(total * libm::pow(self.haar.weight::<f64>(self.group.order()), free.len() as f64))
    }

    /// The same measure with the domain list permuted.
    pub fn permute_domains(&self, perm: &[usize]) -> Result<Self> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.domains.len()).collect::<Vec<_>>() {
            return Err(Error::StructureMismatch(format!("{perm:?} is not a permutation")));
        }
        let mut out = self.clone();
        out.domains = perm.iter().map(|&i| self.domains[i].clone()).collect();
        out.incidences = perm.iter().map(|&i| self.incidences[i].clone()).collect();
        out.densities = perm.iter().map(|&i| self.densities[i].clone()).collect();
        Ok(out)
    }
}

/// `μ_K^Q(C)`.
pub fn mu_k(complex: &Complex, domains: &[Block], q: &impl Semigroup, config: &[usize]) -> Result<f64> {
    MeasureModel::new(complex.clone(), domains.to_vec(), q)?.density(config)
}

/// Calls `f` on every element of `{0..n}^len`, last position slowest.
pub fn for_each_configuration(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut c = vec![0usize; len];
    loop {
        f(&c);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            c[i] += 1;
            if c[i] < n {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosurface::{CellKey, Surface};
    use crate::measure::HeatSemigroup;

    fn chain(n: i64) -> (Complex, Vec<Block>) {
        let pts = (0..=n).map(|x| Surface::unit(CellKey::point(vec![x]), Sign::Plus)).collect();
        let doms = (0..n).map(|x| Block::new(vec![x], vec![x + 1]).unwrap()).collect();
        (Complex::new(pts).unwrap(), doms)
    }

    #[test]
    fn z2_chain_value() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let q = HeatSemigroup::standard(g, Haar::Counting).unwrap();
        let (k, d) = chain(2);
        let mu = mu_k(&k, &d, &q, &[0, 1, 0]).unwrap();
        let q1 = (1.0 - libm::exp(-2.0)) / 2.0;
        assert!((mu - q1 * q1).abs() < 1e-15);
        assert!((mu - 0.186_911).abs() < 1e-6);
        let id = mu_k(&k, &d, &q, &[0, 0, 0]).unwrap();
        assert!((id - ((1.0 + libm::exp(-2.0)) / 2.0).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn chain_kernel_has_unit_mass() {
        for name in ["Z3", "S3"] {
            let g = Arc::new(FiniteGroup::by_name(name).unwrap());
            for haar in [Haar::Counting, Haar::Probability] {
                let q = HeatSemigroup::standard(g.clone(), haar).unwrap();
                let (k, d) = chain(3);
                let m = MeasureModel::new(k, d, &q).unwrap();
                for x0 in g.elements() {
                    let mass = m.kernel_mass(&[(0, x0)]).unwrap();
                    assert!((mass - 1.0).abs() < 1e-12, "{name} {mass}");
                }
                let free_start: f64 = haar.weight::<f64>(g.order()) * g.order() as f64;
                assert!((m.total_mass() - free_start).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn domain_order_is_irrelevant() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let q = HeatSemigroup::standard(g.clone(), Haar::Counting).unwrap();
        let (k, d) = chain(3);
        let m = MeasureModel::new(k, d, &q).unwrap();
        let p = m.permute_domains(&[2, 0, 1]).unwrap();
        for_each_configuration(6, 4, |c| {
            let (a, b) = (m.density(c).unwrap(), p.density(c).unwrap());
            assert!((a - b).abs() <= 1e-15 * a.abs());
        });
    }

    #[test]
    fn rejects_unsaturated_input() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let q = HeatSemigroup::standard(g, Haar::Counting).unwrap();
        let (k, d) = chain(2);
        assert!(MeasureModel::new(k.select(&[0, 1]), d, &q).is_err());
    }
}
