//! Check suites behind the command-line subcommands and the acceptance run.
//! Each suite returns a [`Report`] with one case per check.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use cosurf_core::algebra::{FiniteGroup, Haar, Matrix};
use cosurf_core::cosurface::{
    block_partitions, dimension_extend, extend_abelian, extend_nonabelian, unit_cube, Block, CellKey, Complex,
    Cosurface, Sign, Surface,
};
use cosurf_core::groupoid::GradedGroupoid;
use cosurf_core::measure::{
    axiom_defects, continuity_profile, cut, factorization_check, find_reorder_witness, markov_check,
    measure_series, multiplicativity_defect, paste, permutations, reorder_defect, CobordismComplex,
    CylinderFunction, Gluing, HeatSemigroup, MeasureModel, Semigroup,
};
use cosurf_core::nonregular::{
    check_membership, derivative_at_zero, derivative_at_zero_numeric, ode_escape_check, seminorm_distance,
    uniform_grid,
};
use cosurf_core::product_integral::{
    convergence_table, exp_const_by_ode, iterated_integrals, ode_residual, solve_left_ode, AlgebraPath,
};
use cosurf_core::rational::{int, rat};
use cosurf_core::series::FormalSeries;
use cosurf_core::{Error, Rational};
use rand::Rng;
use serde_json::json;

use crate::fixtures;
use crate::formats::{AnyGroupoid, GroupoidSpec};
use crate::random;
use crate::report::{Case, Report, Row, Table};

/// Runs `f` on the groupoid described by `spec`.
macro_rules! with_groupoid {
    ($spec:expr, |$g:ident| $body:expr) => {
        match $spec.build()? {
            AnyGroupoid::Nat($g) => $body,
            AnyGroupoid::Interval($g) => $body,
            AnyGroupoid::Box($g) => $body,
        }
    };
}

fn ratio_cases(report: &mut Report, rows: &[Row], lo: f64, hi: f64) {
    let grades: std::collections::BTreeSet<usize> = rows.iter().map(|r| r.grade).collect();
    for grade in grades {
        let errs: Vec<&Row> = rows.iter().filter(|r| r.grade == grade).collect();
        for w in errs.windows(2) {
            let ratio = w[0].error / w[1].error;
            let ok = (lo..=hi).contains(&ratio);
            let name = format!("ratio grade {grade} n {}->{}", w[0].n, w[1].n);
            report.push(Case::exact(name, ok).with_detail(json!({ "ratio": ratio, "range": [lo, hi] })));
        }
    }
}

// exp / log

fn roundtrip_on<G: GradedGroupoid>(
    report: &mut Report,
    label: &str,
    g: &G,
    count: usize,
    trunc: usize,
    size: usize,
    seed: u64,
) -> Result<()> {
    let mut rng = random::rng(seed);
    let (mut log_exp, mut exp_log) = (0usize, 0usize);
    for _ in 0..count {
        let a = random::series(&mut rng, g, trunc, size, 0.6);
        if a.exp()?.log()? != a {
            log_exp += 1;
        }
        let one = FormalSeries::one(g.clone(), trunc, &Matrix::identity(size));
        let one_plus = one.add(&a)?;
        if one_plus.log()?.exp()? != one_plus {
            exp_log += 1;
        }
    }
    let detail = json!({ "series": count, "trunc": trunc, "size": size });
    report.push(Case::exact(format!("{label} log(exp(a)) = a"), log_exp == 0).with_detail(json!({
        "mismatches": log_exp, "inputs": detail,
    })));
    report.push(Case::exact(format!("{label} exp(log(1+a)) = 1+a"), exp_log == 0).with_detail(json!({
        "mismatches": exp_log, "inputs": detail,
    })));
    Ok(())
}

/// Exact `exp`/`log` round trips on random series with rational matrix
/// coefficients.
pub fn series_roundtrip(specs: &[GroupoidSpec], count: usize, trunc: usize, size: usize, seed: u64) -> Result<Report> {
    let names: Vec<String> = specs.iter().map(ToString::to_string).collect();
    let mut report = Report::new(
        "series",
        json!({ "groupoids": names, "count": count, "trunc": trunc, "size": size }),
        seed,
    );
    for (k, spec) in specs.iter().enumerate() {
        let label = spec.to_string();
        let s = seed.wrapping_add(k as u64);
        with_groupoid!(spec, |g| roundtrip_on(&mut report, &label, &g, count, trunc, size, s)?);
    }
    Ok(report)
}

/// Round trip of one series given by the user.
pub fn series_file_roundtrip<G: GradedGroupoid>(
    label: &str,
    a: &FormalSeries<G, Matrix<Rational>>,
) -> Result<Report> {
    let mut report = Report::new("series", json!({ "input": label, "trunc": a.trunc() }), 0);
    if !a.has_zero_neutral() {
        bail!("the input series must have zero neutral coefficient");
    }
    report.push(Case::exact("log(exp(a)) = a", a.exp()?.log()? == *a));
    let one_plus = FormalSeries::one(a.groupoid().clone(), a.trunc(), a.unit()).add(a)?;
    report.push(Case::exact("exp(log(1+a)) = 1+a", one_plus.log()?.exp()? == one_plus));
    Ok(report)
}

// product integral

fn product_integral_on<G: GradedGroupoid>(report: &mut Report, label: &str, g: &G, count: usize, seed: u64) -> Result<()> {
    let mut rng = random::rng(seed);
    for k in 0..count {
        let trunc = rng.gen_range(1..=4);
        let degree = rng.gen_range(0..=3);
        let v = random::path(&mut rng, g, trunc, degree, 2, 0.7);
        let u = solve_left_ode(&v);
        let name = format!("{label} path {k} (N = {trunc}, D = {degree})");
        report.push(Case::exact(format!("{name} ode residual"), ode_residual(&u, &v)?.is_zero()));
        let u1 = u.at(&int(1));
        let agree = (0..=trunc).all(|m| {
            let mut ours = u1.grade_part(m);
            ours.retain(|_, c| !cosurf_core::algebra::Algebra::is_zero(c));
            ours == iterated_integrals(&v, m)
        });
        report.push(Case::exact(format!("{name} iterated integrals"), agree));
    }
    let mut rng = random::rng(seed ^ 0x5eed);
    let a = random::series(&mut rng, g, 4, 2, 0.7);
    report.push(Case::exact(format!("{label} constant path gives exp"), exp_const_by_ode(&a)? == a.exp()?));
    Ok(())
}

/// `solve_left_ode` against the residual `∂_s u·u⁻¹ − v` and against the
/// iterated-integral expansion, on seeded random polynomial paths.
pub fn product_integral_suite(specs: &[GroupoidSpec], count: usize, seed: u64) -> Result<Report> {
    let names: Vec<String> = specs.iter().map(ToString::to_string).collect();
    let mut report = Report::new("product-integral", json!({ "groupoids": names, "count": count }), seed);
    for (k, spec) in specs.iter().enumerate() {
        let label = spec.to_string();
        let s = seed.wrapping_add(k as u64);
        with_groupoid!(spec, |g| product_integral_on(&mut report, &label, &g, count, s)?);
    }
    Ok(report)
}

/// `v(s) = Σ_γ (1/|γ| + |γ| s) γ`, rational scalars.
pub fn convergence_path<G: GradedGroupoid>(g: &G, trunc: usize) -> Result<AlgebraPath<G, Rational>> {
    let mut terms = Vec::new();
    for i in g.elements_up_to(trunc) {
        let k = g.ord(&i)? as i64;
        if k > 0 {
            terms.push((i, vec![rat(1, k), int(k)]));
        }
    }
    Ok(AlgebraPath::from_terms(g.clone(), trunc, &int(1), terms)?)
}

/// Euler-product errors for `n` in `ns` and the ratios of consecutive
/// errors, which must lie in `[1.7, 2.3]`.
pub fn expmap(spec: &GroupoidSpec, grade: Option<usize>, trunc: usize, ns: &[usize]) -> Result<Report> {
    if ns.len() < 2 || ns.windows(2).any(|w| w[1] != 2 * w[0]) {
        bail!("--n must list at least two values, each double the previous");
    }
    let trunc = grade.unwrap_or(trunc);
    if trunc == 0 {
        bail!("the truncation must be positive");
    }
    let mut report = Report::new(
        "expmap",
        json!({ "groupoid": spec.to_string(), "grade": grade, "trunc": trunc, "n": ns }),
        0,
    );
    let table = with_groupoid!(spec, |g| convergence_table(&convergence_path(&g, trunc)?, ns)?);
    let rows: Vec<Row> =
        table.iter().filter(|r| grade.is_none_or(|m| r.grade == m)).map(Row::from).collect();
    ratio_cases(&mut report, &rows, 1.7, 2.3);
    report.rows = rows;
    Ok(report)
}

// semigroup

pub const SEMIGROUP_GROUPS: [&str; 5] = ["Z2", "Z3", "Z4", "S3", "Q8"];

/// Axioms of the heat semigroup: `q_0 = δ_e`, `q_s ∗ q_t = q_{s+t}`,
/// unit mass, and central densities with exact equality on classes.
pub fn semigroup_suite(groups: &[FiniteGroup], ts: &[f64], tol: f64) -> Result<Report> {
    let names: Vec<&str> = groups.iter().map(FiniteGroup::name).collect();
    let mut report = Report::new("semigroup", json!({ "groups": names, "t": ts, "tol": tol }), 0);
    for g in groups {
        for haar in [Haar::Counting, Haar::Probability] {
            let q = HeatSemigroup::standard(Arc::new(g.clone()), haar)?;
            let label = format!("{} {:?}", g.name(), haar);
            for &t in ts {
                let qt = q.density(t)?;
                report.push(
                    Case::exact(format!("{label} t={t} central"), qt.is_class_function())
                        .with_detail(json!({ "class_defect": qt.class_defect() })),
                );
                for &s in ts {
                    let d = axiom_defects(&q, s, t)?;
                    report.push(Case::within(format!("{label} s={s} t={t} q_s*q_t = q_(s+t)"), d.semigroup, tol));
                    if s == t {
                        report.push(Case::within(format!("{label} t={t} unit mass"), d.mass, tol));
                        report.push(Case::within(format!("{label} q_0 = delta_e"), d.initial, 0.0));
                        report.push(Case::exact(format!("{label} t={t} positive"), d.min_value > 0.0));
                    }
                }
            }
            let profile = continuity_profile(&q, &[1.0, 0.1, 0.01, 0.001])?;
            let decreasing = profile.windows(2).all(|w| w[1].1 < w[0].1) && profile[3].1 < 1e-2;
            report.push(Case::exact(format!("{label} continuity at 0"), decreasing).with_detail(json!(profile)));
        }
    }
    Ok(report)
}

// Markov property

struct MarkovFixture {
    name: &'static str,
    complex: Complex,
    domains: Vec<Block>,
    splits: Vec<(usize, usize)>,
}

fn markov_fixtures() -> Vec<MarkovFixture> {
    let (c3, d3) = fixtures::chain(2);
    let (c4, d4) = fixtures::chain(3);
    let (strip, ds, mid) = fixtures::strip();
    vec![
        MarkovFixture { name: "3-point chain", complex: c3, domains: d3, splits: vec![(1, 2)] },
        MarkovFixture { name: "4-point chain", complex: c4, domains: d4, splits: vec![(1, 2), (2, 3)] },
        MarkovFixture { name: "2-plaquette strip", complex: strip, domains: ds, splits: vec![(mid, mid + 1)] },
    ]
}

/// Test functions on `L ∪ K⁺` and `K⁻ ∪ L`: indicators and a weighting.
fn markov_functions(
    len: usize,
    l: &std::ops::Range<usize>,
    order: usize,
) -> Vec<(String, CylinderFunction<'static>, CylinderFunction<'static>)> {
    let plus: Vec<usize> = (l.start..len).collect();
    let minus: Vec<usize> = (0..l.end).collect();
    let (p0, m0) = (len - 1, 0);
    let weight = |support: Vec<usize>| {
        CylinderFunction::new(support, |v: &[usize]| {
            v.iter().enumerate().map(|(k, &x)| ((k + 1) * (x + 1)) as f64).sum::<f64>().sqrt()
        })
    };
    let g = (order - 1).min(1);
    vec![
        ("constants".into(), CylinderFunction::constant(1.0), CylinderFunction::constant(1.0)),
        (format!("1[c{p0} = e], 1[c{m0} = {g}]"), CylinderFunction::indicator(p0, 0), CylinderFunction::indicator(m0, g)),
        ("weights on both sides".into(), weight(plus), weight(minus)),
    ]
}

fn markov_model_cases(
    report: &mut Report,
    label: &str,
    model: &MeasureModel,
    splits: &[std::ops::Range<usize>],
    tol: f64,
) -> Result<()> {
    let n = model.group().order();
    for l in splits {
        for (fname, fp, fm) in markov_functions(model.complex().len(), l, n) {
            let r = markov_check(model, l.clone(), &fp, &fm)?;
            let undefined = r.cases.iter().filter(|c| c.residual().is_none()).count();
            let worst = r
                .cases
                .iter()
                .filter(|c| c.residual().is_some())
                .max_by(|a, b| a.residual().unwrap().total_cmp(&b.residual().unwrap()));
            let detail = json!({
                "L": [l.start, l.end],
                "k_minus": [r.split.k_minus.start, r.split.k_minus.end],
                "k_plus": [r.split.k_plus.start, r.split.k_plus.end],
                "conditions": r.cases.len(),
                "zero_mass_conditions": undefined,
                "worst": worst.map(|c| json!({ "l_values": c.l_values, "lhs": c.lhs, "rhs": c.rhs })),
            });
            report.push(
                Case::within(format!("{label} L={l:?} {fname}"), r.max_residual(), tol).with_detail(detail),
            );
        }
    }
    Ok(())
}

/// `E[f⁺f⁻ | C|_L] = E[f⁺ | C|_L] E[f⁻ | C|_L]` by full enumeration.
pub fn markov_suite(groups: &[FiniteGroup], tol: f64) -> Result<Report> {
    let names: Vec<&str> = groups.iter().map(FiniteGroup::name).collect();
    let mut report = Report::new("cosurface markov-check", json!({ "groups": names, "tol": tol }), 0);
    for g in groups {
        let q = HeatSemigroup::standard(Arc::new(g.clone()), Haar::Counting)?;
        for f in markov_fixtures() {
            let model = MeasureModel::new(f.complex, f.domains, &q)?;
            let splits: Vec<_> = f.splits.iter().map(|&(a, b)| a..b).collect();
            markov_model_cases(&mut report, &format!("{} {}", g.name(), f.name), &model, &splits, tol)?;
        }
    }
    Ok(report)
}

/// Markov check of a single user complex at the splitting range `split`.
pub fn markov_custom(
    group: &FiniteGroup,
    complex: Complex,
    domains: Vec<Block>,
    split: std::ops::Range<usize>,
    tol: f64,
) -> Result<Report> {
    let mut report = Report::new(
        "cosurface markov-check",
        json!({ "group": group.name(), "cells": complex.len(), "split": [split.start, split.end], "tol": tol }),
        0,
    );
    let q = HeatSemigroup::standard(Arc::new(group.clone()), Haar::Counting)?;
    let model = MeasureModel::new(complex, domains, &q)?;
    markov_model_cases(&mut report, group.name(), &model, &[split], tol)?;
    Ok(report)
}

// cutting and pasting

struct PasteFixture {
    name: &'static str,
    upper: CobordismComplex,
    lower: CobordismComplex,
    time: i64,
    abelian_only: bool,
}

fn paste_fixtures() -> Result<Vec<PasteFixture>> {
    let two = paste(&fixtures::unit_interval(1)?, &fixtures::unit_interval(0)?)?.whole;
    let interleaved_upper = CobordismComplex::new(
        fixtures::cobordism(&[1, 0], &[2, 1]),
        Complex::new(vec![
            fixtures::edge([1, 0], 0),
            fixtures::edge([1, 0], 1),
            fixtures::edge([1, 1], 0),
            fixtures::edge([2, 0], 1),
        ])?,
        vec![fixtures::block(&[1, 0], &[2, 1])],
    )?;
    let interleaved_lower = CobordismComplex::new(
        fixtures::cobordism(&[0, 0], &[1, 1]),
        Complex::new(vec![
            fixtures::edge([0, 0], 0),
            fixtures::edge([0, 0], 1),
            fixtures::edge([1, 0], 1),
            fixtures::edge([0, 1], 0),
        ])?,
        vec![fixtures::block(&[0, 0], &[1, 1])],
    )?;
    Ok(vec![
        PasteFixture {
            name: "interval [1,2] o [0,1]",
            upper: fixtures::unit_interval(1)?,
            lower: fixtures::unit_interval(0)?,
            time: 1,
            abelian_only: false,
        },
        PasteFixture {
            name: "interval [2,3] o [0,2]",
            upper: fixtures::unit_interval(2)?,
            lower: two,
            time: 2,
            abelian_only: false,
        },
        PasteFixture {
            name: "plaquette [1,2]x[0,1] o [0,1]x[0,1]",
            upper: fixtures::square(1)?,
            lower: fixtures::square(0)?,
            time: 1,
            abelian_only: false,
        },
        PasteFixture {
            name: "plaquette, interleaved orders",
            upper: interleaved_upper,
            lower: interleaved_lower,
            time: 1,
            abelian_only: false,
        },
        PasteFixture {
            name: "columns [1,2]x[0,2] o [0,1]x[0,2]",
            upper: fixtures::column(1)?,
            lower: fixtures::column(0)?,
            time: 1,
            abelian_only: true,
        },
    ])
}

fn gluing_detail(g: &Gluing) -> serde_json::Value {
    json!({
        "cells": g.whole.complex.len(),
        "interface": g.interface.len(),
        "upper_positions": g.upper_positions,
        "lower_positions": g.lower_positions,
    })
}

/// `μ_K · μ_{K'} = μ_{K''}` over all configurations, the order-preserving
/// round trips `cut ∘ paste` and `paste ∘ cut`, and rejection of domain
/// orders that break the product for non-abelian groups.
pub fn cut_paste_suite(groups: &[FiniteGroup], tol: f64) -> Result<Report> {
    let names: Vec<&str> = groups.iter().map(FiniteGroup::name).collect();
    let mut report = Report::new("cosurface cut-paste", json!({ "groups": names, "tol": tol }), 0);
    for f in paste_fixtures()? {
        let glued = paste(&f.upper, &f.lower)?;
        let back = cut(&glued.whole, f.time)?;
        report.push(
            Case::exact(format!("{} cut(paste) = pieces", f.name), back.upper == f.upper && back.lower == f.lower)
                .with_detail(gluing_detail(&glued)),
        );
        let again = paste(&back.upper, &back.lower)?;
        report.push(Case::exact(format!("{} paste(cut) = whole", f.name), again.whole == glued.whole));
        for g in groups {
            if f.abelian_only && !g.is_abelian() {
                continue;
            }
            let q = HeatSemigroup::standard(Arc::new(g.clone()), Haar::Counting)?;
            let r = factorization_check(&glued, &q)?;
            report.push(
                Case::within(format!("{} {} factorization", g.name(), f.name), r.max_residual, tol)
                    .with_detail(json!({ "configurations": r.configurations })),
            );
            let mut swapped = glued.clone();
            swapped.whole.domains.reverse();
            if swapped.whole.domains != glued.whole.domains {
                let outcome = factorization_check(&swapped, &q);
                let (ok, seen) = match (&outcome, g.is_abelian()) {
                    (Ok(r), true) => (r.max_residual <= tol, "accepted".to_string()),
                    (Err(Error::DomainOrder(m)), false) => (true, format!("rejected: {m}")),
                    (Ok(_), false) => (false, "accepted".into()),
                    (Err(e), _) => (false, format!("error: {e}")),
                };
                report.push(
                    Case::exact(format!("{} {} reversed domain order", g.name(), f.name), ok)
                        .with_detail(json!({ "outcome": seen })),
                );
            }
        }
    }
    Ok(report)
}

/// Factorization of a user complex cut at `time`.
pub fn cut_paste_custom(group: &FiniteGroup, whole: &CobordismComplex, time: i64, tol: f64) -> Result<Report> {
    let mut report = Report::new(
        "cosurface cut-paste",
        json!({ "group": group.name(), "cells": whole.complex.len(), "time": time, "tol": tol }),
        0,
    );
    let g = cut(whole, time)?;
    let again = paste(&g.upper, &g.lower)?;
    report.push(Case::exact("paste(cut) = whole", again.whole == *whole).with_detail(gluing_detail(&g)));
    let q = HeatSemigroup::standard(Arc::new(group.clone()), Haar::Counting)?;
    let r = factorization_check(&g, &q)?;
    report.push(
        Case::within("factorization", r.max_residual, tol).with_detail(json!({ "configurations": r.configurations })),
    );
    Ok(report)
}

// reordering

/// Invariance of `μ_K` under every reordering for an abelian group, and a
/// recorded counterexample for a non-abelian one.
pub fn reorder_suite(abelian: &FiniteGroup, nonabelian: &FiniteGroup, tol: f64) -> Result<Report> {
    let mut report = Report::new(
        "reorder",
        json!({ "abelian": abelian.name(), "nonabelian": nonabelian.name(), "tol": tol }),
        0,
    );
    let (k2, d2) = fixtures::chain(1);
    let (k3, d3) = fixtures::chain(2);
    let (k4, d4) = fixtures::chain(3);
    let (kp, dp) = fixtures::plaquette();
    let complexes = [("2-point chain", k2, d2), ("3-point chain", k3, d3), ("4-point chain", k4, d4), ("plaquette", kp, dp)];
    let qa = HeatSemigroup::standard(Arc::new(abelian.clone()), Haar::Counting)?;
    for (name, k, d) in &complexes {
        let mut worst: f64 = 0.0;
        let sigmas = permutations(k.len());
        for sigma in &sigmas {
            worst = worst.max(reorder_defect(k, d, &qa, sigma)?);
        }
        report.push(
            Case::within(format!("{} {name} all reorderings", abelian.name()), worst, tol)
                .with_detail(json!({ "permutations": sigmas.len() })),
        );
    }
    let qn = HeatSemigroup::standard(Arc::new(nonabelian.clone()), Haar::Counting)?;
    let (k, d) = &(complexes[3].1.clone(), complexes[3].2.clone());
    let witness = find_reorder_witness(k, d, &qn, 1e-9)?;
    let case = match &witness {
        Some(w) => Case::exact(format!("{} plaquette reordering counterexample", nonabelian.name()), true).with_detail(
            json!({
                "sigma": w.sigma,
                "config": w.config.iter().map(|&x| nonabelian.label(x)).collect::<Vec<_>>(),
                "mu": w.mu,
                "mu_sigma": w.mu_sigma,
            }),
        ),
        None => Case::exact(format!("{} plaquette reordering counterexample", nonabelian.name()), false),
    };
    report.push(case);
    Ok(report)
}

// dimension extension

/// Rectangles `w × h` with `min(w, h) ≤ 2` and `max(w, h) ≤ 3`.
pub fn refinement_rectangles() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for w in 1..=3 {
        for h in 1..=3 {
            if w.min(h) <= 2 {
                out.push((w, h));
            }
        }
    }
    out
}

fn key_of(s: &Surface) -> CellKey {
    s.parts()[0].0.clone()
}

fn power(g: &FiniteGroup, v: usize, s: Sign) -> usize {
    if s == Sign::Plus {
        v
    } else {
        g.inv(v)
    }
}

/// Face and cube values of the cube pipeline for one edge assignment,
/// from precompiled facet incidences.
struct CubePipeline {
    /// per face: (edge position, φ sign)
    faces: Vec<Vec<(usize, Sign)>>,
    /// per face cell of the complex: its orientation
    face_signs: Vec<Sign>,
    /// (face position, φ sign) for the cube
    cube: Vec<(usize, Sign)>,
}

impl CubePipeline {
    fn new() -> Result<Self> {
        let c = unit_cube();
        let faces = c
            .faces
            .cells()
            .iter()
            .map(|s| c.edges.incidence(&Block::from_cell(&key_of(s), Sign::Plus)))
            .collect::<cosurf_core::Result<Vec<_>>>()?;
        let face_signs = c.faces.cells().iter().map(|s| s.parts()[0].1).collect();
        Ok(CubePipeline { faces, face_signs, cube: c.faces.incidence(&c.cube)? })
    }

    /// `(positive face values, cube value)`.
    fn run(&self, g: &FiniteGroup, edges: &[usize]) -> (Vec<usize>, usize) {
        let faces: Vec<usize> = self
            .faces
            .iter()
            .map(|inc| inc.iter().fold(g.identity(), |acc, &(i, s)| g.mul(acc, power(g, edges[i], s))))
            .collect();
        let top = self.cube.iter().fold(g.identity(), |acc, &(j, s)| {
            g.mul(acc, power(g, power(g, faces[j], self.face_signs[j]), s))
        });
        (faces, top)
    }
}

/// The same values through [`extend_abelian`] and [`dimension_extend`].
fn cube_by_library(g: &Arc<FiniteGroup>, edges: &[usize]) -> Result<(Vec<usize>, usize)> {
    let c = unit_cube();
    let mut values = BTreeMap::new();
    for (s, &v) in c.edges.cells().iter().zip(edges) {
        let (key, sign) = s.parts()[0].clone();
        values.insert(key, power(g, v, sign));
    }
    let base = Cosurface::new(g.clone(), values)?;
    let faces = if g.is_abelian() {
        extend_abelian(&base, &c.edges)?
    } else {
        extend_nonabelian(&base, &c.edges, &c.edges, &BTreeMap::new())?.top
    };
    let face_values = c.faces.cells().iter().map(|s| faces.values()[&key_of(s)]).collect();
    Ok((face_values, dimension_extend(&faces, &c.faces, &c.cube)?))
}

pub struct ExtensionOptions {
    pub abelian: Vec<FiniteGroup>,
    pub cube_group: FiniteGroup,
    pub nonabelian: FiniteGroup,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        ExtensionOptions {
            abelian: vec![FiniteGroup::cyclic(2).expect("Z2"), FiniteGroup::cyclic(3).expect("Z3")],
            cube_group: FiniteGroup::cyclic(3).expect("Z3"),
            nonabelian: FiniteGroup::symmetric3(),
            samples: 2000,
            seed: 0,
        }
    }
}

/// Refinement invariance of the extension for abelian groups, the cube
/// pipeline, and the role of order and centre for a non-abelian group.
pub fn extension_suite(opts: &ExtensionOptions) -> Result<Report> {
    let names: Vec<&str> = opts.abelian.iter().map(FiniteGroup::name).collect();
    let mut report = Report::new(
        "extend",
        json!({
            "abelian": names,
            "cube_group": opts.cube_group.name(),
            "nonabelian": opts.nonabelian.name(),
            "samples": opts.samples,
            "rectangles": refinement_rectangles(),
        }),
        opts.seed,
    );
    for g in &opts.abelian {
        if !g.is_abelian() {
            bail!("{} is not abelian", g.name());
        }
        for (w, h) in refinement_rectangles() {
            let r = fixtures::block(&[0, 0], &[w, h]);
            let partitions = block_partitions(&r);
            let (mut assignments, mut failures) = (0u64, 0u64);
            let mut complete = true;
            for pieces in &partitions {
                let check = cosurf_core::cosurface::RefinementCheck::new(&r, pieces)?;
                let out = check.run(g, &[]);
                complete &= out.assignments == (g.order() as u64).pow(check.keys().len() as u32);
                assignments += out.assignments;
                failures += out.failures;
            }
            report.push(
                Case::exact(format!("{} {w}x{h} refinement invariance", g.name()), failures == 0 && complete)
                    .with_detail(json!({
                        "partitions": partitions.len(),
                        "assignments": assignments,
                        "failures": failures,
                    })),
            );
        }
    }
    cube_cases(&mut report, opts)?;
    nonabelian_cases(&mut report, opts)?;
    Ok(report)
}

fn cube_cases(report: &mut Report, opts: &ExtensionOptions) -> Result<()> {
    let pipe = CubePipeline::new()?;
    let g = Arc::new(opts.cube_group.clone());
    let n = g.order();
    let mut edges = vec![0usize; 12];
    let (mut total, mut open) = (0u64, 0u64);
    loop {
        total += 1;
        if pipe.run(&g, &edges).1 != g.identity() {
            open += 1;
        }
        let Some(i) = edges.iter().position(|&v| v + 1 < n) else { break };
        edges[i] += 1;
        edges[..i].iter_mut().for_each(|v| *v = 0);
    }
    report.push(
        Case::exact(format!("{} cube edge->face->cube closes to e", g.name()), open == 0)
            .with_detail(json!({ "assignments": total, "nontrivial": open })),
    );
    let mut rng = random::rng(opts.seed);
    let mut disagree = 0usize;
    for group in [g.clone(), Arc::new(opts.nonabelian.clone())] {
        for _ in 0..opts.samples {
            let e: Vec<usize> = (0..12).map(|_| rng.gen_range(0..group.order())).collect();
            if pipe.run(&group, &e) != cube_by_library(&group, &e)? {
                disagree += 1;
            }
        }
    }
    report.push(
        Case::exact("compiled cube pipeline matches the extension routines", disagree == 0)
            .with_detail(json!({ "samples_per_group": opts.samples, "disagreements": disagree })),
    );
    let s = Arc::new(opts.nonabelian.clone());
    let mut witness = None;
    for _ in 0..opts.samples {
        let e: Vec<usize> = (0..12).map(|_| rng.gen_range(0..s.order())).collect();
        let (_, top) = pipe.run(&s, &e);
        if top != s.identity() {
            witness = Some((e, top));
            break;
        }
    }
    report.push(
        Case::exact(format!("{} cube value depends on the edge values", s.name()), witness.is_some()).with_detail(
            json!(witness.map(|(e, top)| json!({
                "edges": e.iter().map(|&x| s.label(x)).collect::<Vec<_>>(),
                "cube": s.label(top),
            }))),
        ),
    );
    Ok(())
}

fn nonabelian_cases(report: &mut Report, opts: &ExtensionOptions) -> Result<()> {
    let g = Arc::new(opts.nonabelian.clone());
    let sq = fixtures::block(&[0, 0], &[1, 1]);
    let (k, _) = fixtures::plaquette();
    let keys: Vec<CellKey> = k.cells().iter().map(key_of).collect();

    // the value on a square depends on the order of its edges
    let mut witness = None;
    'search: for sigma in permutations(4) {
        let moved = k.sigma_action(&sigma)?;
        let mut values = vec![0usize; 4];
        loop {
            let c = Cosurface::new(g.clone(), keys.iter().cloned().zip(values.iter().copied()).collect())?;
            let (a, b) = (dimension_extend(&c, &k, &sq)?, dimension_extend(&c, &moved, &sq)?);
            if a != b {
                witness = Some((sigma.clone(), values.clone(), a, b));
                break 'search;
            }
            let Some(i) = values.iter().position(|&v| v + 1 < g.order()) else { break };
            values[i] += 1;
            values[..i].iter_mut().for_each(|v| *v = 0);
        }
    }
    report.push(
        Case::exact(format!("{} square value depends on the edge order", g.name()), witness.is_some()).with_detail(
            json!(witness.map(|(sigma, v, a, b)| json!({
                "sigma": sigma,
                "edges": v.iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
                "ordered": g.label(a),
                "reordered": g.label(b),
            }))),
        ),
    );

    // an overcomplex with one extra interior edge admits only central values
    let strip = fixtures::block(&[0, 0], &[2, 1]);
    let outer: Vec<Surface> = strip.boundary().into_keys().map(|key| Surface::unit(key, Sign::Plus)).collect();
    let base_k = Complex::new(outer.clone())?;
    let mid = fixtures::edge([1, 0], 1);
    let mut cells = outer;
    cells.push(mid.clone());
    let over = Complex::new(cells)?;
    let mut rng = random::rng(opts.seed ^ 0xc0de);
    let values = base_k.cells().iter().map(|s| (key_of(s), rng.gen_range(0..g.order()))).collect();
    let c = Cosurface::new(g.clone(), values)?;
    let mut accepted = Vec::new();
    let mut rejected_ok = true;
    for z in g.elements() {
        let mut center = BTreeMap::new();
        center.insert(key_of(&mid), z);
        match extend_nonabelian(&c, &base_k, &over, &center) {
            Ok(ext) => accepted.push((z, ext)),
            Err(Error::NotCentral(_)) => rejected_ok &= !g.is_central(z),
            Err(e) => return Err(e).context("extension along the overcomplex"),
        }
    }
    let unique = accepted.len() == 1 && accepted[0].0 == g.identity();
    let default = extend_nonabelian(&c, &base_k, &over, &BTreeMap::new())?;
    let matches_default = accepted.first().is_some_and(|(_, ext)| *ext == default);
    report.push(
        Case::exact(
            format!("{} trivial centre gives a unique extension", g.name()),
            g.center() == vec![g.identity()] && unique && rejected_ok && matches_default,
        )
        .with_detail(json!({
            "center": g.center().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
            "accepted": accepted.iter().map(|(z, _)| g.label(*z)).collect::<Vec<_>>(),
        })),
    );
    Ok(())
}

// measure-valued series

/// `c(γ ∗ γ') = c(γ) ∗ c(γ')` for every composable pair of the window.
pub fn measure_series_suite(spec: &GroupoidSpec, trunc: usize, group: &FiniteGroup, tol: f64) -> Result<Report> {
    let mut report = Report::new(
        "cosurface series",
        json!({ "groupoid": spec.to_string(), "trunc": trunc, "group": group.name(), "tol": tol }),
        0,
    );
    for haar in [Haar::Counting, Haar::Probability] {
        let q = HeatSemigroup::standard(Arc::new(group.clone()), haar)?;
        let (defect, pairs) = with_groupoid!(spec, |g| {
            let pairs: usize = g.elements_up_to(trunc).iter().map(|k| g.decompositions(k).len()).sum();
            let s = measure_series(g, trunc, &q)?;
            (multiplicativity_defect(&s)?, pairs)
        });
        report.push(
            Case::within(format!("{} {:?} multiplicativity", group.name(), haar), defect, tol)
                .with_detail(json!({ "composable_pairs": pairs })),
        );
    }
    Ok(report)
}

// non-regularity

pub const NONREGULAR_TS: [f64; 6] = [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9];

/// Membership of `c_t` in the diffeomorphism group on a grid, the
/// derivative at `t = 0`, and the escape of the only candidate solution.
pub fn nonregular_suite(ts: &[f64], points: usize) -> Result<Report> {
    let mut report = Report::new("nonregular", json!({ "t": ts, "points": points }), 0);
    let grid = uniform_grid(points);
    let mut table = Table {
        columns: ["t", "lower_slack", "upper_slack", "range_slack", "derivative_slack", "fd_residual", "escapes"]
            .map(String::from)
            .to_vec(),
        rows: Vec::new(),
    };
    for &t in ts {
        let m = check_membership(t, &grid)?;
        let escapes = if t > 0.0 { json!(ode_escape_check(t)?.escapes) } else { json!("") };
        table.rows.push(vec![
            json!(t),
            json!(m.lower_slack),
            json!(m.upper_slack),
            json!(m.range_slack),
            json!(m.derivative_slack),
            json!(m.fd_residual),
            escapes,
        ]);
        let slack = m.lower_slack.min(m.upper_slack).min(m.range_slack);
        report.push(Case::exact(format!("t={t} membership bounds"), m.pass()).with_detail(json!({
            "lower_slack": m.lower_slack,
            "upper_slack": m.upper_slack,
            "range_slack": m.range_slack,
            "derivative_slack": m.derivative_slack,
            "min_derivative": m.min_derivative,
            "fd_residual": m.fd_residual,
            "boundary_residual": m.boundary_residual,
            "min_slack": slack,
        })));
        let d = (1..=20).map(|n| seminorm_distance(t, n, 2000)).collect::<cosurf_core::Result<Vec<_>>>()?;
        let worst = d.iter().copied().fold(0.0, f64::max);
        report.push(
            Case::exact(format!("t={t} seminorm distance below 1/8"), worst < 0.125)
                .with_detail(json!({ "max_over_n_le_20": worst })),
        );
    }
    let exact = derivative_at_zero(&grid)?;
    let off = exact.iter().filter(|&&v| v != 1.0).count();
    report.push(Case::exact("closed-form dc/dt at t=0 equals 1", off == 0).with_detail(json!({ "mismatches": off })));
    let fd = |h: f64, x: f64| -> Result<f64> { Ok((derivative_at_zero_numeric(h, x)? - 1.0).abs()) };
    report.push(Case::within("forward difference h=1e-4 at x=1/2", fd(1e-4, 0.5)?, 1e-3));
    let mut ratios = Vec::new();
    for x in [0.1, 0.3, 0.5, 0.7, 0.9] {
        ratios.push(fd(2e-4, x)? / fd(1e-4, x)?);
    }
    let first_order = ratios.iter().all(|r| (1.9..=2.1).contains(r));
    report.push(Case::exact("forward difference error is O(h)", first_order).with_detail(json!({ "ratios": ratios })));
    for &t in ts.iter().filter(|&&t| t > 0.0) {
        let v = ode_escape_check(t)?;
        report.push(
            Case::exact(format!("t={t} translation leaves the group"), v.escapes)
                .with_detail(json!({ "limit_at_one": v.limit_at_one })),
        );
    }
    report.table = Some(table);
    Ok(report)
}
