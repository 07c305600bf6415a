//! Product integral on `1 + A`: solutions of `∂_s u · u⁻¹ = v`, `u(0) = 1`.
//!
//! Three independent routes are provided for a polynomial path `v`:
//!
//! - [`euler_product`], the ordered product of `1 + (1/n) v(t)` factors;
//! - [`solve_left_ode`], exact grade recursion with polynomial integration;
//! - [`iterated_integrals`], the sum of time-ordered simplex integrals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::Algebra;
use crate::groupoid::GradedGroupoid;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::series::FormalSeries;
use crate::{Error, Result};

/// A path `s ↦ v(s) ∈ A` whose coefficients are polynomials in `s`.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraPath<G: GradedGroupoid, A: Algebra> {
    series: FormalSeries<G, Poly<A>>,
}

/// Solution `u: [0,1] → 1 + A`, stored like a path with unit `e`-component.
#[derive(Clone, PartialEq, Debug)]
pub struct PathSolution<G: GradedGroupoid, A: Algebra> {
    series: FormalSeries<G, Poly<A>>,
}

/// Order in which decompositions are summed by [`solve_left_ode_ordered`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DecompositionOrder {
    #[default]
    Forward,
    Reverse,
}

fn evaluate<G: GradedGroupoid, A: Algebra>(
    series: &FormalSeries<G, Poly<A>>,
    unit: &A,
    s: &Rational,
) -> FormalSeries<G, A> {
    let terms: Vec<_> = series.terms().map(|(i, p)| (i.clone(), p.eval(s))).collect();
    FormalSeries::from_terms(series.groupoid().clone(), series.trunc(), unit, terms)
        .expect("indexes already validated")
}

impl<G: GradedGroupoid, A: Algebra> AlgebraPath<G, A> {
    pub fn new(series: FormalSeries<G, Poly<A>>) -> Result<Self> {
        if !series.has_zero_neutral() {
            return Err(Error::NonzeroNeutral);
        }
        Ok(AlgebraPath { series })
    }

    /// Builds a path from `(index, coefficients by degree)` terms.
    pub fn from_terms(
        groupoid: G,
        trunc: usize,
        unit: &A,
        terms: impl IntoIterator<Item = (G::Element, Vec<A>)>,
    ) -> Result<Self> {
        let punit = Poly::constant(unit.one_like());
        let terms: Vec<_> = terms.into_iter().map(|(i, cs)| (i, Poly::new(unit, cs))).collect();
        Self::new(FormalSeries::from_terms(groupoid, trunc, &punit, terms)?)
    }

    /// The constant path `s ↦ a`.
    pub fn constant(a: &FormalSeries<G, A>) -> Result<Self> {
        let punit = Poly::constant(a.unit().clone());
        let terms: Vec<_> = a.terms().map(|(i, c)| (i.clone(), Poly::constant(c.clone()))).collect();
        Self::new(FormalSeries::from_terms(a.groupoid().clone(), a.trunc(), &punit, terms)?)
    }

    pub fn series(&self) -> &FormalSeries<G, Poly<A>> {
        &self.series
    }

    pub fn unit(&self) -> A {
        self.series.unit().coeff(0)
    }

    pub fn trunc(&self) -> usize {
        self.series.trunc()
    }

    pub fn groupoid(&self) -> &G {
        self.series.groupoid()
    }

    pub fn at(&self, s: &Rational) -> FormalSeries<G, A> {
        evaluate(&self.series, &self.unit(), s)
    }

    /// Highest polynomial degree among the coefficients.
    pub fn degree(&self) -> usize {
        self.series.terms().filter_map(|(_, p)| p.degree()).max().unwrap_or(0)
    }
}

impl<G: GradedGroupoid, A: Algebra> PathSolution<G, A> {
    pub fn series(&self) -> &FormalSeries<G, Poly<A>> {
        &self.series
    }

    pub fn at(&self, s: &Rational) -> FormalSeries<G, A> {
        evaluate(&self.series, &self.series.unit().coeff(0), s)
    }
}

fn check_unit_interval(s: &Rational) -> Result<()> {
    if *s < int(0) || *s > int(1) {
        return Err(Error::OutOfDomain(alloc::format!("s = {s} is outside [0, 1]")));
    }
    Ok(())
}

/// Euler approximation
///
/// ```text
/// u_n(s) = (1 + (s − j/n) v(j/n)) · Π_{i=1}^{j} (1 + (1/n) v((j − i)/n)),   j = ⌊ns⌋
/// ```
///
/// with the factors multiplied left to right in increasing `i`, so the
/// latest time stands leftmost.
pub fn euler_product<G: GradedGroupoid, A: Algebra>(
    v: &AlgebraPath<G, A>,
    n: usize,
    s: &Rational,
) -> Result<FormalSeries<G, A>> {
    check_unit_interval(s)?;
    if n == 0 {
        return Err(Error::OutOfDomain("n must be positive".into()));
    }
    let nn = int(n as i64);
    let j = (s * &nn).floor().to_integer();
    let j = j.to_usize().expect("0 ≤ ns ≤ n");
    let unit = v.unit();
    let one = FormalSeries::one(v.groupoid().clone(), v.trunc(), &unit);
    let step = int(1) / &nn;

    let jn = int(j as i64) / &nn;
    let partial = s - &jn;
    let mut out = if Zero::is_zero(&partial) {
        one.clone()
    } else {
        one.add(&v.at(&jn).scale(&partial))?
    };
    for i in 1..=j {
        let t = int((j - i) as i64) / &nn;
        let factor = one.add(&v.at(&t).scale(&step))?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Exact solution of `∂_s u = v u`, `u(0) = 1`, by grade recursion.
pub fn solve_left_ode<G: GradedGroupoid, A: Algebra>(v: &AlgebraPath<G, A>) -> PathSolution<G, A> {
    solve_left_ode_ordered(v, DecompositionOrder::Forward)
}

/// [`solve_left_ode`] with an explicit summation order over decompositions.
///
/// `[u]_k(s) = ∫₀^s Σ_{i ∗ j = k, i ≠ e} [v]_i(r) [u]_j(r) dr`, processed by
/// increasing grade of `k`.
pub fn solve_left_ode_ordered<G: GradedGroupoid, A: Algebra>(
    v: &AlgebraPath<G, A>,
    order: DecompositionOrder,
) -> PathSolution<G, A> {
    let g = v.groupoid();
    let trunc = v.trunc();
    let unit = v.unit();
    let zero = Poly::new(&unit, Vec::new());
    let e = g.neutral();

    let mut by_grade: Vec<(usize, G::Element)> = g
        .elements_up_to(trunc)
        .into_iter()
        .map(|k| (g.ord(&k).expect("enumerated element"), k))
        .collect();
    by_grade.sort();

    let mut u: BTreeMap<G::Element, Poly<A>> = BTreeMap::new();
    u.insert(e.clone(), Poly::constant(unit.one_like()));
    for (grade, k) in by_grade {
        if grade == 0 {
            continue;
        }
        let mut pairs = g.decompositions(&k);
        if order == DecompositionOrder::Reverse {
            pairs.reverse();
        }
        let mut integrand = zero.clone();
        for (i, j) in pairs {
            if i == e {
                continue;
            }
            let vi = v.series().coeff(&i);
            if vi.is_zero() {
                continue;
            }
            if let Some(uj) = u.get(&j) {
                integrand = integrand.add(&vi.mul(uj));
            }
        }
        let uk = integrand.integral();
        if !uk.is_zero() {
            u.insert(k, uk);
        }
    }
    let punit = Poly::constant(unit.one_like());
    let series = FormalSeries::from_terms(g.clone(), trunc, &punit, u).expect("indexes from the groupoid");
    PathSolution { series }
}

/// `∂_s u · u⁻¹ − v` as a series of polynomials; zero for an exact solution.
pub fn ode_residual<G: GradedGroupoid, A: Algebra>(
    u: &PathSolution<G, A>,
    v: &AlgebraPath<G, A>,
) -> Result<FormalSeries<G, Poly<A>>> {
    let du = u.series.map(|p| p.derivative());
    du.mul(&u.series.inverse()?)?.sub(v.series())
}

/// `∫_{1 ≥ s₁ ≥ … ≥ s_k ≥ 0} s₁^{d₁} ⋯ s_k^{d_k}`.
fn simplex_moment(degrees: &[usize]) -> Rational {
    let mut out = int(1);
    let mut tail = 0usize;
    for (depth, &d) in degrees.iter().rev().enumerate() {
        tail += d;
        out /= int((tail + depth + 1) as i64);
    }
    out
}

/// Grade-`m` part of `Σ_k ∫_{1 ≥ s₁ ≥ … ≥ s_k ≥ 0} v(s₁) ⋯ v(s_k)`, by
/// expanding every ordered product of path monomials.
pub fn iterated_integrals<G: GradedGroupoid, A: Algebra>(
    v: &AlgebraPath<G, A>,
    m: usize,
) -> BTreeMap<G::Element, A> {
    let g = v.groupoid();
    let unit = v.unit();
    let mut out = BTreeMap::new();
    if m == 0 {
        out.insert(g.neutral(), unit.one_like());
        return out;
    }
    if m > v.trunc() {
        return out;
    }
    // (index, grade, degree, coefficient) for every monomial of v
    let monomials: Vec<(G::Element, usize, usize, A)> = v
        .series()
        .terms()
        .flat_map(|(i, p)| {
            let grade = g.ord(i).expect("stored index");
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, c)| (i.clone(), grade, d, c.clone()))
                .collect::<Vec<_>>()
        })
        .collect();

    struct Walk<'a, G: GradedGroupoid, A: Algebra> {
        g: &'a G,
        monomials: &'a [(G::Element, usize, usize, A)],
        target: usize,
        out: &'a mut BTreeMap<G::Element, A>,
    }

    impl<G: GradedGroupoid, A: Algebra> Walk<'_, G, A> {
        fn go(&mut self, index: &G::Element, grade: usize, coeff: &A, degrees: &mut Vec<usize>) {
            if grade == self.target {
                let term = coeff.scale(&simplex_moment(degrees));
                let slot = self.out.entry(index.clone()).or_insert_with(|| term.zero_like());
                *slot = slot.add(&term);
                return;
            }
            for (i, gi, d, c) in self.monomials {
                if grade + gi > self.target {
                    continue;
                }
                if let Some(k) = self.g.compose(index, i) {
                    degrees.push(*d);
                    self.go(&k, grade + gi, &coeff.mul(c), degrees);
                    degrees.pop();
                }
            }
        }
    }

    let mut walk = Walk { g, monomials: &monomials, target: m, out: &mut out };
    walk.go(&g.neutral(), 0, &unit.one_like(), &mut Vec::new());
    out.retain(|_, c| !c.is_zero());
    out
}

/// Image of the constant path `a` under the product integral, `exp(a)`.
pub fn exp_const<G: GradedGroupoid, A: Algebra>(a: &FormalSeries<G, A>) -> Result<FormalSeries<G, A>> {
    a.exp()
}

/// `u(1)` for the constant path `a`, via [`solve_left_ode`].
pub fn exp_const_by_ode<G: GradedGroupoid, A: Algebra>(a: &FormalSeries<G, A>) -> Result<FormalSeries<G, A>> {
    let v = AlgebraPath::constant(a)?;
    Ok(solve_left_ode(&v).at(&int(1)))
}

/// Largest coefficient magnitude of `a − b` among indexes of grade `m`.
pub fn grade_error<G: GradedGroupoid, A: Algebra>(
    a: &FormalSeries<G, A>,
    b: &FormalSeries<G, A>,
    m: usize,
) -> Result<f64> {
    Ok(a.sub(b)?.grade_magnitude(m))
}

/// Row of a convergence table.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub grade: usize,
    pub error: f64,
}

/// Errors `|[u_n(1)]_m − [u(1)]_m|` for each `n` and each grade `1..=N`.
pub fn convergence_table<G: GradedGroupoid, A: Algebra>(
    v: &AlgebraPath<G, A>,
    ns: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    let exact = solve_left_ode(v).at(&int(1));
    let mut rows = Vec::new();
    for &n in ns {
        let approx = euler_product(v, n, &int(1))?;
        let diff = approx.sub(&exact)?;
        for grade in 1..=v.trunc() {
            rows.push(ConvergenceRow { n, grade, error: diff.grade_magnitude(grade) });
        }
    }
    Ok(rows)
}

/// Solution of `∂_s u = v u` on the grid `s_l = l/m` from samples
/// `v(s_0), …, v(s_m)`, by grade recursion with the cumulative trapezoid
/// rule. The quadrature error is `O(1/m²)` per grade.
pub fn solve_sampled<G: GradedGroupoid, A: Algebra>(samples: &[FormalSeries<G, A>]) -> Result<Vec<FormalSeries<G, A>>> {
    let Some(first) = samples.first() else {
        return Err(Error::OutOfDomain("no samples".into()));
    };
    if samples.len() < 2 {
        return Err(Error::OutOfDomain("at least two samples are required".into()));
    }
    for s in samples {
        if !s.has_zero_neutral() {
            return Err(Error::NonzeroNeutral);
        }
        if s.trunc() != first.trunc() || s.groupoid() != first.groupoid() {
            return Err(Error::StructureMismatch("sample shapes differ".into()));
        }
    }
    let g = first.groupoid();
    let trunc = first.trunc();
    let unit = first.unit().clone();
    let e = g.neutral();
    let m = samples.len() - 1;
    let half_step = int(1) / int(2 * m as i64);

    let mut by_grade: Vec<(usize, G::Element)> =
        g.elements_up_to(trunc).into_iter().map(|k| (g.ord(&k).expect("enumerated element"), k)).collect();
    by_grade.sort();

    // u[l][k]
    let mut u: Vec<BTreeMap<G::Element, A>> = vec![BTreeMap::new(); m + 1];
    for ul in &mut u {
        ul.insert(e.clone(), unit.one_like());
    }
    for (grade, k) in by_grade {
        if grade == 0 {
            continue;
        }
        let pairs: Vec<_> = g.decompositions(&k).into_iter().filter(|(i, _)| *i != e).collect();
        let integrand: Vec<A> = (0..=m)
            .map(|l| {
                pairs.iter().fold(unit.zero_like(), |acc, (i, j)| match u[l].get(j) {
                    Some(uj) => acc.add(&samples[l].coeff(i).mul(uj)),
                    None => acc,
                })
            })
            .collect();
        let mut acc = unit.zero_like();
        for l in 1..=m {
            acc = acc.add(&integrand[l - 1].add(&integrand[l]).scale(&half_step));
            if !acc.is_zero() {
                u[l].insert(k.clone(), acc.clone());
            }
        }
    }
    u.into_iter()
        .map(|terms| FormalSeries::from_terms(g.clone(), trunc, &unit, terms))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::groupoid::{make_nat_monoid, NatMonoid};
    use crate::rational::rat;

    type Q = Rational;

    fn path(trunc: usize, terms: &[(usize, &[i64])]) -> AlgebraPath<NatMonoid, Q> {
        AlgebraPath::from_terms(
            make_nat_monoid(),
            trunc,
            &int(1),
            terms.iter().map(|(i, cs)| (*i, cs.iter().map(|&c| int(c)).collect())),
        )
        .unwrap()
    }

    fn series(trunc: usize, cs: &[(usize, Q)]) -> FormalSeries<NatMonoid, Q> {
        FormalSeries::from_terms(make_nat_monoid(), trunc, &int(1), cs.iter().cloned()).unwrap()
    }

    #[test]
    fn euler_examples() {
        let v = path(3, &[(1, &[1])]);
        assert_eq!(
            euler_product(&v, 2, &int(1)).unwrap(),
            series(3, &[(0, int(1)), (1, int(1)), (2, rat(1, 4))])
        );
        assert_eq!(
            euler_product(&v, 4, &int(1)).unwrap(),
            series(3, &[(0, int(1)), (1, int(1)), (2, rat(3, 8)), (3, rat(1, 16))])
        );
        let w = path(3, &[(1, &[2, -1, 3]), (2, &[0, 1])]);
        assert_eq!(euler_product(&w, 5, &int(0)).unwrap(), series(3, &[(0, int(1))]));
        assert!(euler_product(&w, 5, &rat(3, 2)).is_err());
    }

    #[test]
    fn partial_factor() {
        // n = 2, s = 3/4: j = 1, (1 + v/4)(1 + v/2) for constant v = q
        let v = path(2, &[(1, &[1])]);
        assert_eq!(
            euler_product(&v, 2, &rat(3, 4)).unwrap(),
            series(2, &[(0, int(1)), (1, rat(3, 4)), (2, rat(1, 8))])
        );
    }

    #[test]
    fn ode_examples() {
        let v = path(3, &[(1, &[1])]);
        let u = solve_left_ode(&v);
        assert_eq!(u.series().coeff(&3), Poly::monomial(rat(1, 6), 3));
        assert_eq!(u.at(&int(1)), series(3, &[(0, int(1)), (1, int(1)), (2, rat(1, 2)), (3, rat(1, 6))]));

        let w = path(3, &[(1, &[0, 1])]);
        let u1 = solve_left_ode(&w).at(&int(1));
        assert_eq!(u1.coeff(&1), rat(1, 2));
        assert_eq!(u1.coeff(&2), rat(1, 8));
        assert_eq!(u1.coeff(&3), rat(1, 48));

        let zero = path(3, &[]);
        assert_eq!(solve_left_ode(&zero).at(&rat(1, 3)), series(3, &[(0, int(1))]));
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(iterated_integrals(&path(3, &[(1, &[1])]), 2)[&2], rat(1, 2));
        assert_eq!(iterated_integrals(&path(3, &[(1, &[0, 1])]), 2)[&2], rat(1, 8));
        assert!(iterated_integrals(&path(3, &[(2, &[1])]), 3).is_empty());
    }

    #[test]
    fn residual_vanishes_for_matrix_path() {
        let a = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(2), int(-1)]]).unwrap();
        let z = Matrix::zeros(2);
        let v = AlgebraPath::from_terms(
            make_nat_monoid(),
            4,
            &Matrix::identity(2),
            [(1, vec![a.clone(), b.clone()]), (2, vec![z, a.clone(), b.clone()])],
        )
        .unwrap();
        let u = solve_left_ode(&v);
        assert!(ode_residual(&u, &v).unwrap().is_zero());
        assert_eq!(u, solve_left_ode_ordered(&v, DecompositionOrder::Reverse));
        let u1 = u.at(&int(1));
        for m in 0..=4 {
            let oracle = iterated_integrals(&v, m);
            for (k, c) in u1.grade_part(m) {
                assert_eq!(oracle.get(&k), Some(&c));
            }
            assert_eq!(oracle.len(), u1.grade_part(m).len());
        }
    }

    #[test]
    fn euler_order_is_observable() {
        // a grade-1 path whose values at different times do not commute
        let a = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(0)]]).unwrap();
        let v = AlgebraPath::from_terms(make_nat_monoid(), 2, &Matrix::identity(2), [(1, vec![a.clone(), b.sub(&a)])])
            .unwrap();
        let u2 = euler_product(&v, 2, &int(1)).unwrap();
        // factors: (1 + v(1/2)/2)(1 + v(0)/2)
        let half = rat(1, 2);
        let late = v.at(&half).coeff(&1);
        let early = v.at(&int(0)).coeff(&1);
        assert_eq!(u2.coeff(&2), late.mul(&early).scale(&rat(1, 4)));
        assert_ne!(late.mul(&early), early.mul(&late));
    }

    #[test]
    fn constant_path_is_exp() {
        let a = series(4, &[(1, rat(2, 3)), (3, int(-1))]);
        assert_eq!(exp_const(&a).unwrap(), exp_const_by_ode(&a).unwrap());
    }

    #[test]
    fn first_order_convergence() {
        let v = path(3, &[(1, &[1, 2]), (2, &[0, 0, 3])]);
        let rows = convergence_table(&v, &[8, 16, 32, 64]).unwrap();
        for grade in 1..=3 {
            let errs: Vec<f64> = rows.iter().filter(|r| r.grade == grade).map(|r| r.error).collect();
            for w in errs.windows(2) {
                let ratio = w[0] / w[1];
                assert!((1.7..=2.3).contains(&ratio), "grade {grade}: {ratio}");
            }
        }
    }

    #[test]
    fn sampled_trapezoid_converges() {
        let v = path(2, &[(1, &[1, 2])]);
        let exact = solve_left_ode(&v).at(&int(1));
        let err = |m: usize| {
            let samples: Vec<_> = (0..=m).map(|l| v.at(&rat(l as i64, m as i64))).collect();
            let u = solve_sampled(&samples).unwrap();
            grade_error(&u[m], &exact, 2).unwrap()
        };
        let ratio = err(8) / err(16);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    }
}
