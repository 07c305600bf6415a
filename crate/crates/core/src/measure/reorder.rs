//! Action of permutations on complexes: `σ·K = (s_{σ(1)}, …, s_{σ(n)})`.

use alloc::vec::Vec;

use super::mu::{for_each_configuration, MeasureModel};
use super::semigroup::Semigroup;
use crate::cosurface::{Block, Complex};
use crate::Result;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = alloc::vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Configuration `C` of `K` read on `σ·K`.
fn permuted(config: &[usize], sigma: &[usize]) -> Vec<usize> {
    sigma.iter().map(|&i| config[i]).collect()
}

/// `max_C |μ_{σK}(C) − μ_K(C)|` over `G^K`.
pub fn reorder_defect(complex: &Complex, domains: &[Block], q: &impl Semigroup, sigma: &[usize]) -> Result<f64> {
    let base = MeasureModel::new(complex.clone(), domains.to_vec(), q)?;
    let moved = MeasureModel::new(complex.sigma_action(sigma)?, domains.to_vec(), q)?;
    let mut worst: f64 = 0.0;
    for_each_configuration(q.group().order(), complex.len(), |c| {
        worst = worst.max((base.density_unchecked(c) - moved.density_unchecked(&permuted(c, sigma))).abs());
    });
    Ok(worst)
}

/// A permutation and a configuration on which `μ_{σK} ≠ μ_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReorderWitness {
    pub sigma: Vec<usize>,
    pub config: Vec<usize>,
    pub mu: f64,
    pub mu_sigma: f64,
}

/// First witness with `|μ_{σK}(C) − μ_K(C)| > tol`, scanning permutations
/// in lexicographic order and configurations in enumeration order.
pub fn find_reorder_witness(
    complex: &Complex,
    domains: &[Block],
    q: &impl Semigroup,
    tol: f64,
) -> Result<Option<ReorderWitness>> {
    let base = MeasureModel::new(complex.clone(), domains.to_vec(), q)?;
    for sigma in permutations(complex.len()) {
        let moved = MeasureModel::new(complex.sigma_action(&sigma)?, domains.to_vec(), q)?;
        let mut found = None;
        for_each_configuration(q.group().order(), complex.len(), |c| {
            if found.is_some() {
                return;
            }
            let (mu, mu_sigma) = (base.density_unchecked(c), moved.density_unchecked(&permuted(c, &sigma)));
            if (mu - mu_sigma).abs() > tol {
                found = Some(ReorderWitness { sigma: sigma.clone(), config: c.to_vec(), mu, mu_sigma });
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
