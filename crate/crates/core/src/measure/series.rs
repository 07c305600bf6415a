//! The measure-valued series `γ ↦ q_{vol(γ)}`.

use super::semigroup::Semigroup;
use crate::algebra::{Algebra, GroupFunction};
use crate::groupoid::GradedGroupoid;
use crate::series::FormalSeries;
use crate::Result;

/// Series with coefficient `q_{vol(γ)}` at each `γ` of grade `≤ trunc`;
/// the neutral element carries `q_0 = δ_e`.
pub fn measure_series<G: GradedGroupoid>(
    groupoid: G,
    trunc: usize,
    q: &impl Semigroup,
) -> Result<FormalSeries<G, GroupFunction<f64>>> {
    let unit = q.density(0.0)?;
    let mut terms = alloc::vec::Vec::new();
    for g in groupoid.elements_up_to(trunc) {
        let vol = groupoid.ord(&g)?;
        terms.push((g, q.density(vol as f64)?));
    }
    FormalSeries::from_terms(groupoid, trunc, &unit, terms)
}

/// `max |c(γ∗γ') − c(γ) ∗ c(γ')|` over composable pairs of the window.
pub fn multiplicativity_defect<G: GradedGroupoid>(series: &FormalSeries<G, GroupFunction<f64>>) -> Result<f64> {
    let g = series.groupoid();
    let mut worst: f64 = 0.0;
    for k in g.elements_up_to(series.trunc()) {
        let ck = series.coeff(&k);
        for (i, j) in g.decompositions(&k) {
            let prod = series.coeff(&i).convolve(&series.coeff(&j))?;
            worst = worst.max(prod.sub(&ck).magnitude());
        }
    }
    Ok(worst)
}
