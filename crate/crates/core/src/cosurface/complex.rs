//! Ordered complexes of hypersurfaces and their combinatorial predicates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use super::cell::{Block, CellKey, Sign};
use super::surface::Surface;
use crate::{Error, Result};

/// Ordered sequence of pairwise distinct surfaces of equal dimension.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Complex {
    cells: Vec<Surface>,
}

/// Value of `φ_A(s)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Phi {
    /// `s ⊂ ∂A` with the orientation of `∂A`.
    Same,
    /// `s ⊂ ∂A` with the opposite orientation, so `φ_A(s) = s̃`.
    Reversed,
    /// `s ⊄ ∂A`.
    Empty,
}

impl Phi {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Phi::Same => Some(Sign::Plus),
            Phi::Reversed => Some(Sign::Minus),
            Phi::Empty => None,
        }
    }
}

/// `φ_A(s)` for a domain with boundary `boundary` (see [`Block::boundary`]).
pub fn phi_a(boundary: &BTreeMap<CellKey, Sign>, s: &Surface) -> Result<Phi> {
    let mut same = 0;
    let mut opposite = 0;
    for (k, sign) in s.parts() {
        match boundary.get(k) {
            Some(b) if b == sign => same += 1,
            Some(_) => opposite += 1,
            None => {}
        }
    }
    let n = s.parts().len();
    match (same, opposite) {
        (0, 0) => Ok(Phi::Empty),
        (m, 0) if m == n => Ok(Phi::Same),
        (0, m) if m == n => Ok(Phi::Reversed),
        _ => Err(Error::NonAdapted(format!("{:?}", s.parts()[0].0))),
    }
}

/// Result of [`Complex::splits`].
#[derive(Clone, PartialEq, Debug)]
pub struct Split {
    /// Top-dimensional unit cells of the component containing `K⁻`.
    pub m_minus: Vec<CellKey>,
    pub m_plus: Vec<CellKey>,
    /// Index ranges of `K⁻ = (s_i)_{i<l}` and `K⁺ = (s_i)_{i>m}`.
    pub k_minus: Range<usize>,
    pub k_plus: Range<usize>,
}

impl Complex {
    pub fn new(cells: Vec<Surface>) -> Result<Self> {
        if let Some(first) = cells.first() {
            let (d, n) = (first.dim(), first.ambient());
            if cells.iter().any(|s| s.dim() != d || s.ambient() != n) {
                return Err(Error::InvalidDimension("cells of a complex must have equal dimension".into()));
            }
        }
        for i in 0..cells.len() {
            for j in 0..i {
                if cells[i] == cells[j] {
                    return Err(Error::StructureMismatch(format!("cells {j} and {i} coincide")));
                }
            }
        }
        Ok(Complex { cells })
    }

    pub fn cells(&self) -> &[Surface] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, s: &Surface) -> Option<usize> {
        self.cells.iter().position(|c| c == s)
    }

    /// Faces of the union of all cells.
    pub fn support(&self) -> BTreeSet<CellKey> {
        self.cells.iter().flat_map(|s| s.closure()).collect()
    }

    /// `s_i ∩ s_j ⊂ ∂s_i ∩ ∂s_j` for all `i ≠ j`.
    pub fn is_regular(&self) -> bool {
        let mut seen: BTreeMap<CellKey, (usize, bool)> = BTreeMap::new();
        for (i, s) in self.cells.iter().enumerate() {
            let bd = s.boundary_closure();
            for f in s.closure() {
                let on_bd = bd.contains(&f);
                match seen.get(&f) {
                    Some(&(j, was_bd)) if j != i => {
                        if !(on_bd && was_bd) {
                            return false;
                        }
                    }
                    _ => {
                        seen.insert(f, (i, on_bd));
                    }
                }
            }
        }
        true
    }

    /// Whether the cells bound the domains: regular, domain interiors
    /// disjoint, every unit facet of every `∂A` carried by a cell, and every
    /// cell lying on the boundary of some domain.
    pub fn is_saturated(&self, domains: &[Block]) -> bool {
        self.check_saturated(domains).is_ok()
    }

    pub fn check_saturated(&self, domains: &[Block]) -> Result<()> {
        if !self.is_regular() {
            return Err(Error::NotRegular("cells meet outside their boundaries".into()));
        }
        if domains.is_empty() {
            return Err(Error::NotSaturated("no domains".into()));
        }
        let k = self.cells.first().map(|s| s.dim());
        let mut interiors = BTreeSet::new();
        for (i, a) in domains.iter().enumerate() {
            if k.is_some_and(|k| a.dim() != k + 1) {
                return Err(Error::NotSaturated(format!("domain {i} has dimension {}", a.dim())));
            }
            for u in a.unit_cells() {
                if !interiors.insert(u) {
                    return Err(Error::NotSaturated(format!("domain {i} overlaps another domain")));
                }
            }
        }
        let carried: BTreeSet<&CellKey> = self.cells.iter().flat_map(|s| s.parts().iter().map(|(k, _)| k)).collect();
        let boundaries: Vec<BTreeMap<CellKey, Sign>> = domains.iter().map(Block::boundary).collect();
        for (i, b) in boundaries.iter().enumerate() {
            if let Some(f) = b.keys().find(|f| !carried.contains(f)) {
                return Err(Error::NotSaturated(format!("facet {f} of domain {i} is not in the complex")));
            }
        }
        for (i, s) in self.cells.iter().enumerate() {
            let mut on_some = false;
            for b in &boundaries {
                if phi_a(b, s)? != Phi::Empty {
                    on_some = true;
                }
            }
            if !on_some {
                return Err(Error::NotSaturated(format!("cell {i} bounds no domain")));
            }
        }
        Ok(())
    }

    /// Splitting of the union of `domains` through the subcomplex `l`.
    ///
    /// Returns `Ok(None)` when `⋃ L` does not separate the domains into
    /// exactly two components, or when the cells before (after) `L` do not
    /// lie in the closure of one component (the other).
    pub fn splits(&self, l: Range<usize>, domains: &[Block]) -> Result<Option<Split>> {
        if l.start >= l.end || l.end > self.len() {
            return Err(Error::NoSplit(format!("{l:?} is not a subcomplex of a {}-complex", self.len())));
        }
        let cut: BTreeSet<CellKey> = self.cells[l.clone()].iter().flat_map(|s| s.closure()).collect();
        let tops: Vec<CellKey> = domains.iter().flat_map(Block::unit_cells).collect();
        let components = components(&tops, &cut);
        if components.len() != 2 {
            return Ok(None);
        }
        let k_minus = 0..l.start;
        let k_plus = l.end..self.len();
        let inside = |comp: &[CellKey], s: &Surface| {
            s.parts().iter().all(|(k, _)| comp.iter().any(|t| t.has_face(k)))
        };
        let fits = |minus: &[CellKey], plus: &[CellKey]| {
            self.cells[k_minus.clone()].iter().all(|s| inside(minus, s))
                && self.cells[k_plus.clone()].iter().all(|s| inside(plus, s))
        };
        let (a, b) = (&components[0], &components[1]);
        let (m_minus, m_plus) = if fits(a, b) {
            (a.clone(), b.clone())
        } else if fits(b, a) {
            (b.clone(), a.clone())
        } else {
            return Ok(None);
        };
        Ok(Some(Split { m_minus, m_plus, k_minus, k_plus }))
    }

    /// `self ≺ finer`: same union, and every cell is the in-order composition
    /// of a contiguous subcomplex of `finer`.
    pub fn refines(&self, finer: &Complex) -> bool {
        if self.support() != finer.support() {
            return false;
        }
        self.cells.iter().all(|s| {
            (0..finer.len()).any(|start| {
                let mut acc: Option<Surface> = None;
                for t in &finer.cells[start..] {
                    acc = match acc {
                        None => Some(t.clone()),
                        Some(a) => a.star(t),
                    };
                    match &acc {
                        Some(a) if a == s => return true,
                        Some(a) if a.parts().len() >= s.parts().len() => return false,
                        Some(_) => {}
                        None => return false,
                    }
                }
                false
            })
        })
    }

    /// `σ·K = (s_{σ(1)}, …, s_{σ(n)})`.
    pub fn sigma_action(&self, sigma: &[usize]) -> Result<Complex> {
        if sigma.len() != self.len() {
            return Err(Error::StructureMismatch(format!(
                "permutation of size {} for a {}-complex",
                sigma.len(),
                self.len()
            )));
        }
        let mut seen = alloc::vec![false; sigma.len()];
        for &i in sigma {
            if i >= sigma.len() || core::mem::replace(&mut seen[i], true) {
                return Err(Error::StructureMismatch(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(Complex { cells: sigma.iter().map(|&i| self.cells[i].clone()).collect() })
    }

    /// Cells on `∂A`, in complex order, with their `φ_A` sign.
    pub fn incidence(&self, domain: &Block) -> Result<Vec<(usize, Sign)>> {
        let b = domain.boundary();
        let mut out = Vec::new();
        for (i, s) in self.cells.iter().enumerate() {
            if let Some(sign) = phi_a(&b, s)?.sign() {
                out.push((i, sign));
            }
        }
        Ok(out)
    }

    /// Subcomplex of the cells at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Complex {
        Complex { cells: indices.iter().map(|&i| self.cells[i].clone()).collect() }
    }
}

/// Connected components of the union of the closed top cells after removing
/// the faces in `cut`; two cells are adjacent when they share a face outside
/// `cut`.
fn components(tops: &[CellKey], cut: &BTreeSet<CellKey>) -> Vec<Vec<CellKey>> {
    let mut parent: Vec<usize> = (0..tops.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: BTreeMap<CellKey, usize> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        for f in t.closure() {
            if cut.contains(&f) {
                continue;
            }
            match owner.get(&f) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(f, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<CellKey>> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(t.clone());
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn point(x: i64) -> Surface {
        Surface::unit(CellKey::point(vec![x]), Sign::Plus)
    }

    fn seg(a: i64) -> Surface {
        Surface::unit(CellKey::new(vec![a], &[0]).unwrap(), Sign::Plus)
    }

    fn interval(a: i64, b: i64) -> Block {
        Block::new(vec![a], vec![b]).unwrap()
    }

    #[test]
    fn distinct_cells_required() {
        assert!(Complex::new(vec![point(0), point(0)]).is_err());
    }

    #[test]
    fn regularity() {
        let apart = Complex::new(vec![seg(0), seg(2)]).unwrap();
        assert!(apart.is_regular());
        let touching = Complex::new(vec![seg(0), seg(1)]).unwrap();
        assert!(touching.is_regular());
        // an L-path and a straight path crossing at an interior point
        let e = |b: [i64; 2], a: usize| Surface::unit(CellKey::new(b.to_vec(), &[a]).unwrap(), Sign::Plus);
        let horizontal = e([1, 1], 0).star(&e([0, 1], 0)).unwrap();
        let vertical = e([1, 1], 1).star(&e([1, 0], 1)).unwrap();
        assert!(!Complex::new(vec![horizontal, vertical]).unwrap().is_regular());
    }

    #[test]
    fn chain_splits_at_middle_point() {
        let k = Complex::new(vec![point(0), point(1), point(2)]).unwrap();
        let domains = [interval(0, 1), interval(1, 2)];
        assert!(k.is_saturated(&domains));
        let split = k.splits(1..2, &domains).unwrap().unwrap();
        assert_eq!(split.k_minus, 0..1);
        assert_eq!(split.k_plus, 2..3);
        assert_eq!(split.m_minus, vec![CellKey::new(vec![0], &[0]).unwrap()]);
        // an end point does not separate
        assert!(k.splits(0..1, &domains).unwrap().is_none());
        // order matters: the point after L must lie on the far side
        let bad = Complex::new(vec![point(2), point(1), point(2 + 1)]).unwrap();
        assert!(bad.splits(1..2, &[interval(0, 1), interval(1, 2), interval(2, 3)]).unwrap().is_none());
        assert!(k.splits(core::ops::Range { start: 2, end: 1 }, &domains).is_err());
    }

    #[test]
    fn phi_orientation() {
        let b = interval(0, 1).boundary();
        assert_eq!(phi_a(&b, &point(1)).unwrap(), Phi::Same);
        assert_eq!(phi_a(&b, &point(0)).unwrap(), Phi::Reversed);
        assert_eq!(phi_a(&b, &point(5)).unwrap(), Phi::Empty);
        let sq = Block::new(vec![0, 0], vec![1, 1]).unwrap().boundary();
        let e = |b: [i64; 2], a: usize| Surface::unit(CellKey::new(b.to_vec(), &[a]).unwrap(), Sign::Plus);
        let partial = e([1, 0], 0).star(&e([0, 0], 0)).unwrap();
        assert!(matches!(phi_a(&sq, &partial), Err(Error::NonAdapted(_))));
    }

    #[test]
    fn refinement() {
        let coarse = Complex::new(vec![seg(1).star(&seg(0)).unwrap()]).unwrap();
        let fine = Complex::new(vec![seg(1), seg(0)]).unwrap();
        assert!(coarse.refines(&fine));
        assert!(fine.refines(&fine));
        assert!(!coarse.refines(&Complex::new(vec![seg(0), seg(1)]).unwrap()));
        assert!(!fine.refines(&coarse));
    }

    #[test]
    fn sigma() {
        let k = Complex::new(vec![point(0), point(1), point(2)]).unwrap();
        assert_eq!(k.sigma_action(&[0, 1, 2]).unwrap(), k);
        assert_eq!(k.sigma_action(&[2, 1, 0]).unwrap().cells()[0], point(2));
        assert!(k.sigma_action(&[0, 0, 1]).is_err());
        assert!(k.sigma_action(&[0, 1]).is_err());
    }
}
