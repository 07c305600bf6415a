use std::sync::Arc;

use cosurf_core::algebra::{Algebra, FiniteGroup, GroupFunction, Haar, Matrix};
use cosurf_core::groupoid::{make_interval_groupoid, GradedGroupoid, IntervalGroupoid, NatMonoid};
use cosurf_core::measure::{HeatSemigroup, Semigroup};
use cosurf_core::rational::rat;
use cosurf_core::series::{FormalSeries, SemidirectElement};
use cosurf_core::Rational;
use proptest::prelude::*;

type Q = Rational;

fn small_rational() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn matrix() -> impl Strategy<Value = Matrix<Q>> {
    proptest::collection::vec(small_rational(), 4)
        .prop_map(|v| Matrix::from_rows(vec![v[..2].to_vec(), v[2..].to_vec()]).unwrap())
}

fn series_on<G: GradedGroupoid + 'static>(g: G, trunc: usize) -> impl Strategy<Value = FormalSeries<G, Matrix<Q>>> {
    let elems: Vec<G::Element> = g.elements_up_to(trunc).into_iter().filter(|i| !g.is_neutral(i)).collect();
    let n = elems.len();
    proptest::collection::vec(proptest::option::weighted(0.5, matrix()), n).prop_map(move |cs| {
        let terms = elems.iter().cloned().zip(cs).filter_map(|(i, c)| c.map(|c| (i, c)));
        FormalSeries::from_terms(g.clone(), trunc, &Matrix::identity(2), terms).unwrap()
    })
}

fn nat_series() -> impl Strategy<Value = FormalSeries<NatMonoid, Matrix<Q>>> {
    series_on(NatMonoid, 4)
}

fn interval_series() -> impl Strategy<Value = FormalSeries<IntervalGroupoid, Matrix<Q>>> {
    series_on(make_interval_groupoid(0, 4).unwrap(), 4)
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (2usize..=8).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
        Just(FiniteGroup::symmetric3()),
        Just(FiniteGroup::quaternion8()),
    ]
}

fn function_on(g: Arc<FiniteGroup>, haar: Haar) -> impl Strategy<Value = GroupFunction<Q>> {
    let n = g.order();
    proptest::collection::vec(small_rational(), n).prop_map(move |v| GroupFunction::new(g.clone(), haar, v).unwrap())
}

type Triple = (Arc<FiniteGroup>, GroupFunction<Q>, GroupFunction<Q>, GroupFunction<Q>);

fn triple() -> impl Strategy<Value = Triple> {
    (group(), prop_oneof![Just(Haar::Counting), Just(Haar::Probability)]).prop_flat_map(|(g, haar)| {
        let g = Arc::new(g);
        (Just(g.clone()), function_on(g.clone(), haar), function_on(g.clone(), haar), function_on(g, haar))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_nat(a in nat_series(), b in nat_series(), c in nat_series()) {
        prop_assert_eq!(a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?);
        prop_assert_eq!(a.add(&b)?.mul(&c)?, a.mul(&c)?.add(&b.mul(&c)?)?);
        prop_assert_eq!(c.mul(&a.add(&b)?)?, c.mul(&a)?.add(&c.mul(&b)?)?);
        let one = FormalSeries::one(NatMonoid, 4, &Matrix::identity(2));
        prop_assert_eq!(one.mul(&a)?, a.clone());
        prop_assert_eq!(a.mul(&one)?, a);
    }

    #[test]
    fn ring_axioms_interval(a in interval_series(), b in interval_series(), c in interval_series()) {
        prop_assert_eq!(a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?);
        prop_assert_eq!(a.add(&b)?.mul(&c)?, a.mul(&c)?.add(&b.mul(&c)?)?);
    }

    #[test]
    fn exp_log_inverse(a in interval_series(), b in nat_series()) {
        prop_assert_eq!(a.exp()?.log()?, a.clone());
        prop_assert_eq!(b.exp()?.log()?, b.clone());
        let one = FormalSeries::one(NatMonoid, 4, &Matrix::identity(2));
        let u = one.add(&b)?;
        prop_assert_eq!(u.log()?.exp()?, u.clone());
        prop_assert_eq!(u.mul(&u.inverse()?)?, one);
    }

    #[test]
    fn exp_of_negation_is_inverse(a in interval_series()) {
        prop_assert_eq!(a.exp()?.mul(&a.neg().exp()?)?, FormalSeries::one(*a.groupoid(), 4, a.unit()));
    }

    #[test]
    fn semidirect_group_laws(g1 in matrix(), g2 in matrix(), g3 in matrix(),
                             a in nat_series(), b in nat_series(), c in nat_series()) {
        prop_assume!(g1.is_invertible() && g2.is_invertible() && g3.is_invertible());
        let x = SemidirectElement::new(g1, a)?;
        let y = SemidirectElement::new(g2, b)?;
        let z = SemidirectElement::new(g3, c)?;
        prop_assert_eq!(x.mul(&y)?.mul(&z)?, x.mul(&y.mul(&z)?)?);
        prop_assert!(x.mul(&x.inverse()?)?.is_identity());
        prop_assert!(x.inverse()?.mul(&x)?.is_identity());
    }

    #[test]
    fn convolution_is_associative((g, f, h, k) in triple()) {
        prop_assert_eq!(f.convolve(&h)?.convolve(&k)?, f.convolve(&h.convolve(&k)?)?);
        let delta = GroupFunction::delta(g.clone(), f.haar(), g.identity());
        prop_assert_eq!(f.convolve(&delta)?, f.clone());
        prop_assert_eq!(delta.convolve(&f)?, f);
    }

    #[test]
    fn heat_densities_are_central(t in 0.0f64..3.0) {
        for g in [FiniteGroup::symmetric3(), FiniteGroup::quaternion8()] {
            let q = HeatSemigroup::standard(Arc::new(g), Haar::Probability)?;
            let d = q.density(t)?;
            prop_assert!(d.is_class_function());
            let g = q.group();
            for x in g.elements() {
                for y in g.elements() {
                    prop_assert_eq!(d.at(g.conjugate(y, x)), d.at(x));
                }
            }
        }
    }

    #[test]
    fn groupoid_composition_is_associative(a in 0i64..4, b in 0i64..4, c in 0i64..4, d in 0i64..4) {
        let g = make_interval_groupoid(0, 4).unwrap();
        let els = g.elements_up_to(4);
        let pick = |k: i64| els[(k as usize) % els.len()].clone();
        let (x, y, z) = (pick(a * 4 + b), pick(b * 4 + c), pick(c * 4 + d));
        let left = g.compose(&x, &y).and_then(|xy| g.compose(&xy, &z));
        let right = g.compose(&y, &z).and_then(|yz| g.compose(&x, &yz));
        prop_assert_eq!(left, right);
        if let Some(xy) = g.compose(&x, &y) {
            prop_assert_eq!(g.ord(&xy)?, g.ord(&x)? + g.ord(&y)?);
        }
    }
}

#[test]
fn matrix_algebra_basics() {
    let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 1)], vec![rat(0, 1), rat(-2, 3)]]).unwrap();
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), Matrix::identity(2));
    assert!(Algebra::is_zero(&m.sub(&m)));
}
