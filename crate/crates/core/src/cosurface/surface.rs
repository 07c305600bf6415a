//! Composite hypersurfaces built from unit cells by gluing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::cell::{Cell, CellKey, Part, Sign};

/// Gluing law.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlueMode {
    /// Along the whole common border, which must carry opposite orientations.
    Vee,
    /// Along `a = α(s₁) ∩ β(s₂)`.
    Star,
}

/// Oriented union of unit cells with initial and final boundary parts.
///
/// `parts` keeps the composition order: the parts of `s₁ ∗ s₂` are those of
/// `s₁` followed by those of `s₂`. Equality ignores that order.
#[derive(Clone, Debug)]
pub struct Surface {
    parts: Vec<(CellKey, Sign)>,
    alpha: BTreeMap<CellKey, Sign>,
    beta: BTreeMap<CellKey, Sign>,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.beta == other.beta && self.part_set() == other.part_set()
    }
}

impl Eq for Surface {}

impl From<Cell> for Surface {
    fn from(cell: Cell) -> Self {
        Surface::from_cell(&cell)
    }
}

impl Surface {
    pub fn from_cell(cell: &Cell) -> Self {
        let mut alpha = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for (k, s, p) in cell.oriented_facets() {
            match p {
                Part::Initial => alpha.insert(k, s),
                Part::Final => beta.insert(k, s),
            };
        }
        Surface { parts: alloc::vec![(cell.key.clone(), cell.sign)], alpha, beta }
    }

    /// Unit cell with default labels.
    pub fn unit(key: CellKey, sign: Sign) -> Self {
        Self::from_cell(&Cell::new(key, sign))
    }

    pub fn parts(&self) -> &[(CellKey, Sign)] {
        &self.parts
    }

    pub fn part_set(&self) -> BTreeSet<(CellKey, Sign)> {
        self.parts.iter().cloned().collect()
    }

    pub fn alpha(&self) -> &BTreeMap<CellKey, Sign> {
        &self.alpha
    }

    pub fn beta(&self) -> &BTreeMap<CellKey, Sign> {
        &self.beta
    }

    pub fn dim(&self) -> usize {
        self.parts[0].0.dim()
    }

    pub fn ambient(&self) -> usize {
        self.parts[0].0.ambient()
    }

    pub fn is_unit(&self) -> bool {
        self.parts.len() == 1
    }

    /// `s̃`: reversed orientation, initial and final parts exchanged.
    pub fn reverse(&self) -> Self {
        let flip = |m: &BTreeMap<CellKey, Sign>| m.iter().map(|(k, s)| (k.clone(), s.flip())).collect();
        Surface {
            parts: self.parts.iter().rev().map(|(k, s)| (k.clone(), s.flip())).collect(),
            alpha: flip(&self.beta),
            beta: flip(&self.alpha),
        }
    }

    /// Facets of the parts met an odd number of times, with induced signs.
    pub fn geometric_boundary(&self) -> BTreeMap<CellKey, Sign> {
        let mut count: BTreeMap<CellKey, (usize, Sign)> = BTreeMap::new();
        for (k, s) in &self.parts {
            for (f, t) in k.facets() {
                let e = count.entry(f).or_insert((0, t * *s));
                e.0 += 1;
            }
        }
        count.into_iter().filter(|(_, (n, _))| n % 2 == 1).map(|(k, (_, s))| (k, s)).collect()
    }

    /// Faces of the closed point set.
    pub fn closure(&self) -> BTreeSet<CellKey> {
        self.parts.iter().flat_map(|(k, _)| k.closure()).collect()
    }

    /// Faces of `∂s`: the closure of the geometric boundary and of `α ∪ β`.
    pub fn boundary_closure(&self) -> BTreeSet<CellKey> {
        self.geometric_boundary()
            .keys()
            .chain(self.alpha.keys())
            .chain(self.beta.keys())
            .flat_map(|k| k.closure())
            .collect()
    }

    fn shares_part(&self, other: &Self) -> bool {
        let mine: BTreeSet<&CellKey> = self.parts.iter().map(|(k, _)| k).collect();
        other.parts.iter().any(|(k, _)| mine.contains(k))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.dim() == other.dim() && !self.shares_part(other)
    }

    /// `s₁ ∗ s₂` (with `self = s₁`), or `None` when undefined.
    pub fn star(&self, other: &Self) -> Option<Self> {
        if !self.compatible(other) {
            return None;
        }
        let a: Vec<CellKey> = self.alpha.keys().filter(|k| other.beta.contains_key(*k)).cloned().collect();
        if a.is_empty() || a.iter().any(|k| self.alpha[k] == other.beta[k]) {
            return None;
        }
        let mut alpha: BTreeMap<CellKey, Sign> =
            self.alpha.iter().filter(|(k, _)| !a.contains(k)).map(|(k, s)| (k.clone(), *s)).collect();
        alpha.extend(other.alpha.iter().map(|(k, s)| (k.clone(), *s)));
        let mut beta: BTreeMap<CellKey, Sign> =
            other.beta.iter().filter(|(k, _)| !a.contains(k)).map(|(k, s)| (k.clone(), *s)).collect();
        beta.extend(self.beta.iter().map(|(k, s)| (k.clone(), *s)));
        let parts = self.parts.iter().chain(&other.parts).cloned().collect();
        Some(Surface { parts, alpha, beta })
    }

    /// `s₁ ∨ s₂`: glued along the common border, which must be a nonempty union
    /// of facets carrying opposite induced orientations.
    pub fn vee(&self, other: &Self) -> Option<Self> {
        if !self.compatible(other) {
            return None;
        }
        let mine = self.closure();
        let theirs = other.closure();
        let common: BTreeSet<&CellKey> = mine.intersection(&theirs).collect();
        let bd1 = self.boundary_closure();
        let bd2 = other.boundary_closure();
        if common.iter().any(|f| !bd1.contains(*f) || !bd2.contains(*f)) {
            return None;
        }
        let g1 = self.geometric_boundary();
        let g2 = other.geometric_boundary();
        let shared: Vec<&CellKey> = g1.keys().filter(|k| g2.contains_key(*k)).collect();
        if shared.is_empty() || shared.iter().any(|k| g1[*k] == g2[*k]) {
            return None;
        }
        let drop = |m: &BTreeMap<CellKey, Sign>| -> BTreeMap<CellKey, Sign> {
            m.iter().filter(|(k, _)| !shared.contains(k)).map(|(k, s)| (k.clone(), *s)).collect()
        };
        let mut alpha = drop(&self.alpha);
        alpha.extend(drop(&other.alpha));
        let mut beta = drop(&self.beta);
        beta.extend(drop(&other.beta));
        let parts = self.parts.iter().chain(&other.parts).cloned().collect();
        Some(Surface { parts, alpha, beta })
    }

    pub fn glue(&self, other: &Self, mode: GlueMode) -> Option<Self> {
        match mode {
            GlueMode::Star => self.star(other),
            GlueMode::Vee => self.vee(other),
        }
    }

    /// `s₁ ∗ s₂ ∗ … ∗ s_n`, grouped from the left.
    pub fn compose_all<'a>(surfaces: impl IntoIterator<Item = &'a Surface>) -> Option<Surface> {
        let mut it = surfaces.into_iter();
        let first = it.next()?.clone();
        it.try_fold(first, |acc, s| acc.star(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(base: &[i64], axis: usize, sign: Sign) -> Surface {
        Surface::unit(CellKey::new(base.to_vec(), &[axis]).unwrap(), sign)
    }

    fn square(base: &[i64]) -> Surface {
        Surface::unit(CellKey::new(base.to_vec(), &[0, 1]).unwrap(), Sign::Plus)
    }

    fn pt(x: &[i64]) -> CellKey {
        CellKey::point(x.to_vec())
    }

    #[test]
    fn segments_compose() {
        let later = edge(&[1], 0, Sign::Plus);
        let earlier = edge(&[0], 0, Sign::Plus);
        let s = later.star(&earlier).unwrap();
        assert_eq!(s.alpha().keys().collect::<Vec<_>>(), [&pt(&[0])]);
        assert_eq!(s.beta().keys().collect::<Vec<_>>(), [&pt(&[2])]);
        assert!(earlier.star(&later).is_none());
        assert_eq!(s.reverse().reverse(), s);
    }

    #[test]
    fn vee_rejects_orientation_clash() {
        let a = edge(&[0], 0, Sign::Plus);
        let b = edge(&[1], 0, Sign::Minus);
        assert!(a.vee(&b).is_none());
        assert!(a.vee(&edge(&[1], 0, Sign::Plus)).is_some());
    }

    #[test]
    fn squares_compose_to_rectangle() {
        let left = square(&[0, 0]);
        let right = square(&[1, 0]);
        // the shared edge is final in the left square, initial in the right one
        let r = right.star(&left).unwrap();
        let e = |b: &[i64], a: usize| CellKey::new(b.to_vec(), &[a]).unwrap();
        let alpha: Vec<CellKey> = r.alpha().keys().cloned().collect();
        let beta: Vec<CellKey> = r.beta().keys().cloned().collect();
        let mut want_alpha = alloc::vec![e(&[0, 0], 1), e(&[0, 1], 0), e(&[1, 1], 0)];
        let mut want_beta = alloc::vec![e(&[0, 0], 0), e(&[1, 0], 0), e(&[2, 0], 1)];
        want_alpha.sort();
        want_beta.sort();
        assert_eq!(alpha, want_alpha);
        assert_eq!(beta, want_beta);
        assert!(left.star(&right).is_none());
        assert_eq!(r.geometric_boundary().len(), 6);
        assert!(left.vee(&right).is_some());
    }

    #[test]
    fn duplicate_parts_rejected() {
        let a = edge(&[0], 0, Sign::Plus);
        assert!(a.star(&a.reverse()).is_none());
    }

    #[test]
    fn loop_has_equal_ends() {
        // counterclockwise boundary of the unit square, starting at the origin
        let e1 = edge(&[0, 0], 0, Sign::Plus);
        let e2 = edge(&[1, 0], 1, Sign::Plus);
        let e3 = edge(&[0, 1], 0, Sign::Minus);
        let e4 = edge(&[0, 0], 1, Sign::Minus);
        let path = e4.star(&e3.star(&e2.star(&e1).unwrap()).unwrap()).unwrap();
        assert_eq!(path.alpha().keys().collect::<Vec<_>>(), [&pt(&[0, 0])]);
        assert_eq!(path.beta().keys().collect::<Vec<_>>(), [&pt(&[0, 0])]);
        assert!(path.geometric_boundary().is_empty());
    }
}
