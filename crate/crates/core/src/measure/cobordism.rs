//! Complexes on box cobordisms: adaptedness, border reduction, cutting
//! along a time slice and pasting along a shared face.
//!
//! Time is axis 0. A box `Y` runs from `α(Y)` (lowest time) to `β(Y)`, and
//! `Y ∘ Y'` is defined when `α(Y) = β(Y')`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::mu::{for_each_configuration, MeasureModel};
use super::semigroup::Semigroup;
use crate::cosurface::{Block, CellKey, Complex, Part, Sign, Surface};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismBox {
    block: Block,
}

impl CobordismBox {
    pub fn new(block: Block) -> Result<Self> {
        if block.hi[0] <= block.lo[0] || block.sign != Sign::Plus {
            return Err(Error::MalformedBox(format!("{block} has no positive time extent")));
        }
        Ok(CobordismBox { block })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn alpha(&self) -> Block {
        self.block.face(0, false)
    }

    pub fn beta(&self) -> Block {
        self.block.face(0, true)
    }

    /// `self ∘ lower`, defined when `α(self) = β(lower)`.
    pub fn compose(&self, lower: &CobordismBox) -> Option<CobordismBox> {
        (self.alpha() == lower.beta()).then(|| {
            let mut block = self.block.clone();
            block.lo[0] = lower.block.lo[0];
            CobordismBox { block }
        })
    }
}

fn is_contained(s: &Surface, b: &Block) -> bool {
    s.parts().iter().all(|(k, _)| b.contains(k))
}

fn in_boundary(s: &Surface, b: &Block) -> bool {
    s.parts().iter().all(|(k, _)| b.boundary_contains(k))
}

/// Transversality on `∂Y`: cells lie in `Y`; a cell not contained in `∂Y`
/// meets `∂Y` only inside its own boundary, and its facets on `α(Y)`
/// (`β(Y)`) are initial (final).
pub fn is_adapted(k: &Complex, y: &CobordismBox) -> bool {
    let (alpha, beta) = (y.alpha(), y.beta());
    k.cells().iter().all(|s| {
        if !is_contained(s, &y.block) {
            return false;
        }
        if in_boundary(s, &y.block) {
            return true;
        }
        let bd = s.boundary_closure();
        s.closure().iter().all(|f| !y.block.boundary_contains(f) || bd.contains(f))
            && s.alpha().keys().all(|f| !beta.contains(f))
            && s.beta().keys().all(|f| !alpha.contains(f))
    })
}

/// One component of `∂A_k ∩ ∂Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderPiece {
    pub domain: usize,
    /// Unit facets, oriented as `∂Y`.
    pub facets: BTreeMap<CellKey, Sign>,
    /// Boundary faces of the piece with the parts they carry in the cells
    /// of `K` (off `∂Y`) that have them as facets: `(face, [(cell, part)])`.
    pub labels: Vec<(CellKey, Vec<(usize, Part)>)>,
}

/// The unordered border reduction of `K` on `∂Y`.
pub fn border_reduce(k: &Complex, y: &CobordismBox, domains: &[Block]) -> Result<Vec<BorderPiece>> {
    if !is_adapted(k, y) {
        return Err(Error::NonAdapted("complex is not adapted to the box".into()));
    }
    let outer = y.block.boundary();
    let inner: Vec<usize> = (0..k.len()).filter(|&i| !in_boundary(&k.cells()[i], &y.block)).collect();
    let mut out = Vec::new();
    for (d, a) in domains.iter().enumerate() {
        let facets: Vec<CellKey> = a.boundary().into_keys().filter(|f| outer.contains_key(f)).collect();
        for comp in facet_components(&facets) {
            let mut count: BTreeMap<CellKey, usize> = BTreeMap::new();
            for f in &comp {
                for (g, _) in f.facets() {
                    *count.entry(g).or_default() += 1;
                }
            }
            let labels = count
                .into_iter()
                .filter(|(_, c)| c % 2 == 1)
                .map(|(g, _)| {
                    let mut by: Vec<(usize, Part)> = Vec::new();
                    for &i in &inner {
                        let s = &k.cells()[i];
                        if s.alpha().contains_key(&g) {
                            by.push((i, Part::Initial));
                        } else if s.beta().contains_key(&g) {
                            by.push((i, Part::Final));
                        }
                    }
                    (g, by)
                })
                .collect();
            let facets = comp.into_iter().map(|f| {
                let s = outer[&f];
                (f, s)
            });
            out.push(BorderPiece { domain: d, facets: facets.collect(), labels });
        }
    }
    Ok(out)
}

/// Components of a set of unit facets, adjacent when sharing a face.
fn facet_components(facets: &[CellKey]) -> Vec<Vec<CellKey>> {
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: BTreeMap<CellKey, usize> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for g in f.closure() {
            if &g == f {
                continue;
            }
            match owner.get(&g) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(g, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<CellKey>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(f.clone());
    }
    groups.into_values().collect()
}

/// A complex with its domains on a box cobordism.
#[derive(Clone, Debug, PartialEq)]
pub struct CobordismComplex {
    pub cobordism: CobordismBox,
    pub complex: Complex,
    pub domains: Vec<Block>,
}

fn face_covered(k: &Complex, face: &Block) -> bool {
    let carried: BTreeSet<&CellKey> = k
        .cells()
        .iter()
        .filter(|s| is_contained(s, face))
        .flat_map(|s| s.parts().iter().map(|(key, _)| key))
        .collect();
    let mut cells = face.unit_cells();
    let span = face.axis_list().iter().fold(0u32, |m, &a| m | (1 << a));
    for c in &mut cells {
        c.axes = span;
    }
    cells.iter().all(|c| carried.contains(c))
}

impl CobordismComplex {
    /// Checks that `K` is a complex for cobordism: saturated for domains
    /// partitioning `Y`, covering `α(Y)` and `β(Y)`, and adapted.
    pub fn new(cobordism: CobordismBox, complex: Complex, domains: Vec<Block>) -> Result<Self> {
        let y = &cobordism.block;
        if domains.iter().any(|a| a.ambient() != y.ambient() || a.unit_cells().iter().any(|c| !y.contains(c))) {
            return Err(Error::NotSaturated("a domain leaves the box".into()));
        }
        if domains.iter().map(Block::volume).sum::<usize>() != y.volume() {
            return Err(Error::NotSaturated("domains do not cover the box".into()));
        }
        complex.check_saturated(&domains)?;
        if !face_covered(&complex, &cobordism.alpha()) || !face_covered(&complex, &cobordism.beta()) {
            return Err(Error::NotSaturated("initial or final face not covered".into()));
        }
        if !is_adapted(&complex, &cobordism) {
            return Err(Error::NonAdapted("complex is not adapted to the box".into()));
        }
        Ok(CobordismComplex { cobordism, complex, domains })
    }
}

pub fn is_complex_for_cobordism(k: &Complex, y: &CobordismBox, domains: &[Block]) -> bool {
    CobordismComplex::new(y.clone(), k.clone(), domains.to_vec()).is_ok()
}

/// `Y'' = Y ∘ Y'` with `K''` and the ordered pieces `K ⊂ Y`, `K' ⊂ Y'`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gluing {
    pub whole: CobordismComplex,
    pub upper: CobordismComplex,
    pub lower: CobordismComplex,
    /// `K_b`, the cells on `α(Y) = β(Y')`, in `K''` order.
    pub interface: Complex,
    /// Position in `K''` of each cell of `K`.
    pub upper_positions: Vec<usize>,
    pub lower_positions: Vec<usize>,
}

impl Gluing {
    /// `C ↦ (C|_K, C|_{K'})`.
    pub fn restrict(&self, config: &[usize]) -> (Vec<usize>, Vec<usize>) {
        (
            self.upper_positions.iter().map(|&i| config[i]).collect(),
            self.lower_positions.iter().map(|&i| config[i]).collect(),
        )
    }

    /// `c''` from `c` on `K` and `c'` on `K'`; they must agree on `K_b`.
    pub fn paste_configurations(&self, upper: &[usize], lower: &[usize]) -> Result<Vec<usize>> {
        if upper.len() != self.upper_positions.len() || lower.len() != self.lower_positions.len() {
            return Err(Error::StructureMismatch("configuration lengths".into()));
        }
        let mut out: Vec<Option<usize>> = alloc::vec![None; self.whole.complex.len()];
        for (&p, &v) in self.upper_positions.iter().zip(upper) {
            out[p] = Some(v);
        }
        for (&p, &v) in self.lower_positions.iter().zip(lower) {
            if out[p].is_some_and(|u| u != v) {
                return Err(Error::PasteValues(format!("values differ on interface cell {p}")));
            }
            out[p] = Some(v);
        }
        Ok(out.into_iter().map(|v| v.expect("every cell lies in Y or Y'")).collect())
    }
}

fn positions(whole: &Complex, part: &Complex) -> Vec<usize> {
    part.cells().iter().map(|s| whole.position(s).expect("subcomplex")).collect()
}

/// Cuts `K''` on `Y''` along the slice `t = time`.
pub fn cut(whole: &CobordismComplex, time: i64) -> Result<Gluing> {
    let y = &whole.cobordism.block;
    if time <= y.lo[0] || time >= y.hi[0] {
        return Err(Error::NoSplit(format!("slice {time} is not inside {y}")));
    }
    let mut lower_block = y.clone();
    lower_block.hi[0] = time;
    let mut upper_block = y.clone();
    upper_block.lo[0] = time;
    let slice = upper_block.face(0, false);
    let pick = |b: &Block| -> Vec<usize> {
        (0..whole.complex.len()).filter(|&i| is_contained(&whole.complex.cells()[i], b)).collect()
    };
    let (up, low, mid) = (pick(&upper_block), pick(&lower_block), pick(&slice));
    if let Some(i) = (0..whole.complex.len()).find(|i| !up.contains(i) && !low.contains(i)) {
        return Err(Error::NoSplit(format!("cell {i} crosses the slice")));
    }
    let side = |b: &Block| -> Vec<Block> {
        whole.domains.iter().filter(|a| a.unit_cells().iter().all(|c| b.contains(c))).cloned().collect()
    };
    let (upper_domains, lower_domains) = (side(&upper_block), side(&lower_block));
    if upper_domains.len() + lower_domains.len() != whole.domains.len() {
        return Err(Error::NoSplit("a domain crosses the slice".into()));
    }
    let upper = CobordismComplex::new(CobordismBox::new(upper_block)?, whole.complex.select(&up), upper_domains)?;
    let lower = CobordismComplex::new(CobordismBox::new(lower_block)?, whole.complex.select(&low), lower_domains)?;
    Ok(Gluing {
        whole: whole.clone(),
        interface: whole.complex.select(&mid),
        upper,
        lower,
        upper_positions: up,
        lower_positions: low,
    })
}

fn bef<'a>(list: &'a [Surface], s: &Surface) -> &'a [Surface] {
    &list[..list.iter().position(|t| t == s).expect("member")]
}

fn aft<'a>(list: &'a [Surface], s: &Surface) -> &'a [Surface] {
    &list[list.iter().position(|t| t == s).expect("member") + 1..]
}

/// `bef(s) ∩ aft(t)` for `t` before `s`.
fn between<'a>(list: &'a [Surface], after: &Surface, before: &Surface) -> &'a [Surface] {
    let i = list.iter().position(|t| t == after).expect("member");
    let j = list.iter().position(|t| t == before).expect("member");
    &list[i + 1..j]
}

/// Pastes `K` on `Y` over `K'` on `Y'`, interleaving them around the
/// shared cells `(s_1, …, s_l)` of `α(Y) = β(Y')`.
pub fn paste(upper: &CobordismComplex, lower: &CobordismComplex) -> Result<Gluing> {
    let y = upper
        .cobordism
        .compose(&lower.cobordism)
        .ok_or_else(|| Error::PasteInterface("α(Y) differs from β(Y')".into()))?;
    let (k, kp) = (upper.complex.cells(), lower.complex.cells());
    let shared: Vec<Surface> = k.iter().filter(|s| is_contained(s, &upper.cobordism.alpha())).cloned().collect();
    let shared_low: Vec<Surface> = kp.iter().filter(|s| is_contained(s, &lower.cobordism.beta())).cloned().collect();
    if shared != shared_low {
        return Err(Error::PasteInterface("interface cells differ in order, orientation or parts".into()));
    }
    let Some(first) = shared.first() else {
        return Err(Error::PasteInterface("no interface cells".into()));
    };
    // first step
    let mut acc: Vec<Surface> = bef(k, first).iter().chain(bef(kp, first)).chain(&shared).cloned().collect();
    // intermediate steps
    for w in shared.windows(2) {
        let (si, sn) = (&w[0], &w[1]);
        let next: Vec<Surface> = bef(&acc, sn)
            .iter()
            .chain(between(k, si, sn))
            .chain(between(kp, si, sn))
            .chain(aft(&acc, si))
            .cloned()
            .collect();
        acc = ordered_union(next);
    }
    // final step
    let last = shared.last().expect("nonempty");
    acc.extend(aft(k, last).iter().chain(aft(kp, last)).cloned());
    let complex = Complex::new(acc)?;
    let domains: Vec<Block> = lower.domains.iter().chain(&upper.domains).cloned().collect();
    let whole = CobordismComplex::new(y, complex, domains)?;
    Ok(Gluing {
        interface: Complex::new(shared)?,
        upper_positions: positions(&whole.complex, &upper.complex),
        lower_positions: positions(&whole.complex, &lower.complex),
        whole,
        upper: upper.clone(),
        lower: lower.clone(),
    })
}

/// Keeps the first occurrence of each cell.
fn ordered_union(list: Vec<Surface>) -> Vec<Surface> {
    let mut out: Vec<Surface> = Vec::with_capacity(list.len());
    for s in list {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Pasting with an empty lower complex leaves `K` unchanged.
pub fn paste_or_neutral(upper: &CobordismComplex, lower: Option<&CobordismComplex>) -> Result<CobordismComplex> {
    match lower {
        None => Ok(upper.clone()),
        Some(l) => Ok(paste(upper, l)?.whole),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    pub configurations: u64,
    pub max_residual: f64,
}

/// `max |μ_K(C|_K) μ_{K'}(C|_{K'}) − μ_{K''}(C)|` over `C ∈ G^{K''}`.
///
/// For non-abelian groups the domains of `K''` in `Y'` must come first.
pub fn factorization_check(g: &Gluing, q: &impl Semigroup) -> Result<FactorizationReport> {
    if !q.group().is_abelian() {
        let lower_box = g.lower.cobordism.block();
        let in_lower: Vec<bool> =
            g.whole.domains.iter().map(|a| a.unit_cells().iter().all(|c| lower_box.contains(c))).collect();
        if in_lower.windows(2).any(|w| !w[0] && w[1]) {
            return Err(Error::DomainOrder("domains of Y' must precede those of Y".into()));
        }
    }
    let whole = MeasureModel::new(g.whole.complex.clone(), g.whole.domains.clone(), q)?;
    let upper = MeasureModel::new(g.upper.complex.clone(), g.upper.domains.clone(), q)?;
    let lower = MeasureModel::new(g.lower.complex.clone(), g.lower.domains.clone(), q)?;
    let mut report = FactorizationReport { configurations: 0, max_residual: 0.0 };
    for_each_configuration(q.group().order(), g.whole.complex.len(), |c| {
        let (cu, cl) = g.restrict(c);
        let lhs = upper.density_unchecked(&cu) * lower.density_unchecked(&cl);
        report.configurations += 1;
        report.max_residual = report.max_residual.max((lhs - whole.density_unchecked(c)).abs());
    });
    Ok(report)
}
