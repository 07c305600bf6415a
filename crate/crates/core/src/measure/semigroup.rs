//! Convolution semigroups of densities on a finite group.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FiniteGroup, GroupFunction, Haar};
use crate::{Error, Result};

/// A family `t ↦ q_t` of densities on a finite group.
pub trait Semigroup {
    fn group(&self) -> &Arc<FiniteGroup>;
    fn haar(&self) -> Haar;
    fn density(&self, t: f64) -> Result<GroupFunction<f64>>;
}

/// The heat semigroup `q_t = exp(t L) δ_e` with
/// `L f = f ∗ (ν − δ_e)`, `ν` uniform on the generator set `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatSemigroup {
    group: Arc<FiniteGroup>,
    generators: Vec<usize>,
    haar: Haar,
}

impl HeatSemigroup {
    /// `S` must be symmetric, closed under conjugation and generating.
    pub fn new(group: Arc<FiniteGroup>, generators: Vec<usize>, haar: Haar) -> Result<Self> {
        let mut s = generators;
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&x| x >= group.order()) {
            return Err(Error::InvalidGenerators(format!("{s:?}")));
        }
        if let Some(&x) = s.iter().find(|&&x| s.binary_search(&group.inv(x)).is_err()) {
            return Err(Error::InvalidGenerators(format!("inverse of {} missing", group.label(x))));
        }
        for &x in &s {
            if let Some(g) = group.elements().find(|&g| s.binary_search(&group.conjugate(g, x)).is_err()) {
                return Err(Error::InvalidGenerators(format!(
                    "conjugate of {} by {} missing",
                    group.label(x),
                    group.label(g)
                )));
            }
        }
        if !group.generates(&s) {
            return Err(Error::InvalidGenerators("set does not generate the group".into()));
        }
        Ok(HeatSemigroup { group, generators: s, haar })
    }

    /// Default generators: the transpositions for `S3`, all non-identity
    /// elements otherwise.
    pub fn standard(group: Arc<FiniteGroup>, haar: Haar) -> Result<Self> {
        let s = group.default_generators();
        Self::new(group, s, haar)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Point masses `Q_t({x})`, from `e^{-t} Σ_k t^k/k! ν^{∗k}`.
    pub fn masses(&self, t: f64) -> Result<Vec<f64>> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::OutOfDomain(format!("t = {t}")));
        }
        let g = &self.group;
        let n = g.order();
        let step = 1.0 / self.generators.len() as f64;
        let mut power = vec![0.0; n];
        power[g.identity()] = 1.0;
        let mut out = vec![0.0; n];
        let mut coeff = libm::exp(-t);
        let mut k = 0u32;
        loop {
            for (o, p) in out.iter_mut().zip(&power) {
                *o += coeff * p;
            }
            k += 1;
            coeff *= t / k as f64;
            if coeff < 1e-18 && k as f64 > t {
                break;
            }
            let mut next = vec![0.0; n];
            for (x, &p) in power.iter().enumerate() {
                if p != 0.0 {
                    for &s in &self.generators {
                        next[g.mul(x, s)] += p * step;
                    }
                }
            }
            power = next;
        }
        Ok(out)
    }
}

impl Semigroup for HeatSemigroup {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn haar(&self) -> Haar {
        self.haar
    }

    fn density(&self, t: f64) -> Result<GroupFunction<f64>> {
        let w: f64 = self.haar.weight(self.group.order());
        let masses = self.masses(t)?;
        GroupFunction::new(self.group.clone(), self.haar, masses.into_iter().map(|m| m / w).collect())
    }
}

/// `q_t` for the heat semigroup generated by `S`.
pub fn heat_semigroup(group: Arc<FiniteGroup>, generators: Vec<usize>, t: f64, haar: Haar) -> Result<GroupFunction<f64>> {
    HeatSemigroup::new(group, generators, haar)?.density(t)
}

/// Defects of the semigroup axioms at `(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomDefects {
    /// `max |q_0 − δ_e|`.
    pub initial: f64,
    /// `max |q_s ∗ q_t − q_{s+t}|`.
    pub semigroup: f64,
    /// Largest spread of `q_t` on a conjugacy class.
    pub class: f64,
    /// `|∫ q_t dλ − 1|`.
    pub mass: f64,
    /// `min q_t`.
    pub min_value: f64,
}

impl AxiomDefects {
    pub fn max_residual(&self) -> f64 {
        self.initial.max(self.semigroup).max(self.class).max(self.mass).max((-self.min_value).max(0.0))
    }
}

fn sup_distance(a: &GroupFunction<f64>, b: &GroupFunction<f64>) -> f64 {
    a.values().iter().zip(b.values()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn axiom_defects(q: &impl Semigroup, s: f64, t: f64) -> Result<AxiomDefects> {
    let delta = GroupFunction::delta(q.group().clone(), q.haar(), q.group().identity());
    let (qs, qt, qst) = (q.density(s)?, q.density(t)?, q.density(s + t)?);
    Ok(AxiomDefects {
        initial: sup_distance(&q.density(0.0)?, &delta),
        semigroup: sup_distance(&qs.convolve(&qt)?, &qst),
        class: qt.class_defect(),
        mass: (qt.mass() - 1.0).abs(),
        min_value: qt.values().iter().copied().fold(f64::INFINITY, f64::min),
    })
}

/// `(t, max_x |Q_t({x}) − δ_e({x})|)` for each `t`.
pub fn continuity_profile(q: &HeatSemigroup, ts: &[f64]) -> Result<Vec<(f64, f64)>> {
    let e = q.group().identity();
    ts.iter()
        .map(|&t| {
            let m = q.masses(t)?;
            let d = m.iter().enumerate().fold(0.0f64, |acc, (x, v)| acc.max((v - if x == e { 1.0 } else { 0.0 }).abs()));
            Ok((t, d))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn z2_closed_form() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        for t in [0.0, 0.25, 1.0, 3.0] {
            let q = heat_semigroup(g.clone(), vec![1], t, Haar::Counting).unwrap();
            approx(q.values()[0], (1.0 + libm::exp(-2.0 * t)) / 2.0, 1e-15);
            approx(q.values()[1], (1.0 - libm::exp(-2.0 * t)) / 2.0, 1e-15);
        }
        let p = heat_semigroup(g, vec![1], 1.0, Haar::Probability).unwrap();
        approx(p.values()[1], 1.0 - libm::exp(-2.0), 1e-15);
    }

    #[test]
    fn cyclic_groups_match_characters() {
        for n in [3usize, 4, 5] {
            let g = Arc::new(FiniteGroup::cyclic(n).unwrap());
            let q = HeatSemigroup::standard(g, Haar::Counting).unwrap();
            let t = 0.7;
            let m = q.masses(t).unwrap();
            let tau = 2.0 * core::f64::consts::PI / n as f64;
            for (j, &mj) in m.iter().enumerate() {
                let mut want = 0.0;
                for k in 0..n {
                    let lam = (1..n).map(|s| libm::cos(tau * (k * s) as f64)).sum::<f64>() / (n - 1) as f64 - 1.0;
                    want += libm::exp(t * lam) * libm::cos(tau * (j * k) as f64);
                }
                approx(mj, want / n as f64, 1e-13);
            }
        }
    }

    #[test]
    fn generator_validation() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let t = s3.default_generators();
        assert!(HeatSemigroup::new(s3.clone(), vec![t[0]], Haar::Counting).is_err());
        let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        assert!(HeatSemigroup::new(z4.clone(), vec![1], Haar::Counting).is_err());
        assert!(HeatSemigroup::new(z4.clone(), vec![2], Haar::Counting).is_err());
        assert!(HeatSemigroup::new(z4, vec![1, 3], Haar::Counting).unwrap().masses(-1.0).is_err());
    }

    #[test]
    fn axioms_hold() {
        for name in ["Z2", "Z3", "Z4", "S3", "Q8"] {
            let g = Arc::new(FiniteGroup::by_name(name).unwrap());
            for haar in [Haar::Counting, Haar::Probability] {
                let q = HeatSemigroup::standard(g.clone(), haar).unwrap();
                for t in [0.25, 0.5, 1.0, 2.0] {
                    let d = axiom_defects(&q, 0.5, t).unwrap();
                    assert!(d.max_residual() < 1e-12, "{name} {t} {d:?}");
                    assert!(q.density(t).unwrap().is_class_function(), "{name} {t}");
                }
            }
        }
    }

    #[test]
    fn weak_continuity_at_zero() {
        let q = HeatSemigroup::standard(Arc::new(FiniteGroup::symmetric3()), Haar::Counting).unwrap();
        let ts = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
        let prof = continuity_profile(&q, &ts).unwrap();
        assert!(prof.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(prof.last().unwrap().1 < 1e-5);
    }
}
