//! Seeded generators of test inputs.

use cosurf_core::algebra::Matrix;
use cosurf_core::groupoid::GradedGroupoid;
use cosurf_core::product_integral::AlgebraPath;
use cosurf_core::rational::rat;
use cosurf_core::series::FormalSeries;
use cosurf_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn matrix(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    let rows = (0..n).map(|_| (0..n).map(|_| rational(rng, 3, 4)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// Series with zero neutral coefficient; each index of grade `1..=trunc`
/// carries a random matrix with probability `density`.
pub fn series<G: GradedGroupoid>(
    rng: &mut impl Rng,
    groupoid: &G,
    trunc: usize,
    n: usize,
    density: f64,
) -> FormalSeries<G, Matrix<Rational>> {
    let e = groupoid.neutral();
    let terms: Vec<_> = groupoid
        .elements_up_to(trunc)
        .into_iter()
        .filter(|i| *i != e)
        .filter_map(|i| rng.gen_bool(density).then(|| (i, matrix(rng, n))))
        .collect();
    FormalSeries::from_terms(groupoid.clone(), trunc, &Matrix::identity(n), terms).expect("indexes from the groupoid")
}

/// Polynomial path of degree `≤ degree` on each index of grade `1..=trunc`.
pub fn path<G: GradedGroupoid>(
    rng: &mut impl Rng,
    groupoid: &G,
    trunc: usize,
    degree: usize,
    n: usize,
    density: f64,
) -> AlgebraPath<G, Matrix<Rational>> {
    let e = groupoid.neutral();
    let terms: Vec<_> = groupoid
        .elements_up_to(trunc)
        .into_iter()
        .filter(|i| *i != e)
        .filter_map(|i| rng.gen_bool(density).then(|| (i, (0..=degree).map(|_| matrix(rng, n)).collect())))
        .collect();
    AlgebraPath::from_terms(groupoid.clone(), trunc, &Matrix::identity(n), terms).expect("indexes from the groupoid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cosurf_core::groupoid::NatMonoid;

    #[test]
    fn seeded_streams_repeat() {
        let a = series(&mut rng(7), &NatMonoid, 4, 2, 0.8);
        let b = series(&mut rng(7), &NatMonoid, 4, 2, 0.8);
        assert_eq!(a, b);
        assert!(a.has_zero_neutral());
    }
}
