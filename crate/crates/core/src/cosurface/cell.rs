//! Unit lattice cells in `ℤ^d`, oriented and with labelled facets, and
//! axis-aligned blocks used as domains.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i64(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("orientation must be ±1, got {s}"))),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^k`
    pub fn parity(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Unoriented unit face `base + [0,1]^axes` of the lattice `ℤ^d`, of any
/// dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellKey {
    pub base: Vec<i64>,
    pub axes: u32,
}

impl CellKey {
    pub fn new(base: Vec<i64>, axes: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &a in axes {
            if a >= base.len() || mask & (1 << a) != 0 {
                return Err(Error::InvalidDimension(format!("axes {axes:?} in dimension {}", base.len())));
            }
            mask |= 1 << a;
        }
        Ok(CellKey { base, axes: mask })
    }

    pub fn point(base: Vec<i64>) -> Self {
        CellKey { base, axes: 0 }
    }

    pub fn ambient(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.axes.count_ones() as usize
    }

    pub fn spans(&self, axis: usize) -> bool {
        self.axes & (1 << axis) != 0
    }

    /// Spanned axes in increasing order.
    pub fn axis_list(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|&a| self.spans(a)).collect()
    }

    /// Facets with the sign induced on them by the positive orientation,
    /// indexed `2j + upper` where `j` is the position of the removed axis.
    ///
    /// `∂ = Σ_j (−1)^j (F_j^1 − F_j^0)`.
    pub fn facets(&self) -> Vec<(CellKey, Sign)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for (j, a) in self.axis_list().into_iter().enumerate() {
            let axes = self.axes & !(1 << a);
            let lower = CellKey { base: self.base.clone(), axes };
            let mut upper = lower.clone();
            upper.base[a] += 1;
            out.push((lower, Sign::parity(j + 1)));
            out.push((upper, Sign::parity(j)));
        }
        out
    }

    /// All faces of the closed cell, the cell itself included.
    pub fn closure(&self) -> Vec<CellKey> {
        let mut out = vec![CellKey { base: self.base.clone(), axes: 0 }];
        for a in self.axis_list() {
            let mut next = Vec::with_capacity(out.len() * 3);
            for f in out {
                let mut up = f.clone();
                up.base[a] += 1;
                next.push(CellKey { base: f.base.clone(), axes: f.axes | (1 << a) });
                next.push(up);
                next.push(f);
            }
            out = next;
        }
        out
    }

    /// Whether `other` is a face of the closed cell `self`.
    pub fn has_face(&self, other: &CellKey) -> bool {
        if other.ambient() != self.ambient() || other.axes & !self.axes != 0 {
            return false;
        }
        (0..self.ambient()).all(|a| {
            let d = other.base[a] - self.base[a];
            if other.spans(a) || !self.spans(a) {
                d == 0
            } else {
                d == 0 || d == 1
            }
        })
    }

    /// Lower and upper corner of the cell.
    pub fn bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let hi = (0..self.ambient()).map(|a| self.base[a] + i64::from(self.spans(a))).collect();
        (self.base.clone(), hi)
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.bounds();
        for a in 0..self.ambient() {
            if a > 0 {
                f.write_str("x")?;
            }
            if lo[a] == hi[a] {
                write!(f, "{}", lo[a])?;
            } else {
                write!(f, "[{},{}]", lo[a], hi[a])?;
            }
        }
        Ok(())
    }
}

/// Boundary part a facet is assigned to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Part {
    Initial,
    Final,
}

impl Part {
    pub fn swap(self) -> Self {
        match self {
            Part::Initial => Part::Final,
            Part::Final => Part::Initial,
        }
    }
}

/// Oriented unit cell whose facets are each labelled initial or final.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub key: CellKey,
    pub sign: Sign,
    /// Label of facet `2j + upper`, in the order of [`CellKey::facets`].
    pub labels: Vec<Part>,
}

impl Cell {
    /// Default labels: facets with negative induced orientation are initial.
    pub fn new(key: CellKey, sign: Sign) -> Self {
        let labels = key
            .facets()
            .into_iter()
            .map(|(_, s)| if s * sign == Sign::Plus { Part::Final } else { Part::Initial })
            .collect();
        Cell { key, sign, labels }
    }

    pub fn with_labels(key: CellKey, sign: Sign, labels: Vec<Part>) -> Result<Self> {
        if labels.len() != 2 * key.dim() {
            return Err(Error::InvalidDimension(format!(
                "{} facet labels for a {}-cell",
                labels.len(),
                key.dim()
            )));
        }
        Ok(Cell { key, sign, labels })
    }

    pub fn reverse(&self) -> Self {
        Cell { key: self.key.clone(), sign: self.sign.flip(), labels: self.labels.iter().map(|p| p.swap()).collect() }
    }

    /// Facets with their orientation induced by this cell and their label.
    pub fn oriented_facets(&self) -> Vec<(CellKey, Sign, Part)> {
        self.key
            .facets()
            .into_iter()
            .zip(&self.labels)
            .map(|((k, s), &p)| (k, s * self.sign, p))
            .collect()
    }
}

/// Axis-aligned block `Π [lo_a, hi_a]` with an orientation; the spanned
/// axes are those with `hi_a > lo_a`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub sign: Sign,
}

impl Block {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        Self::oriented(lo, hi, Sign::Plus)
    }

    pub fn oriented(lo: Vec<i64>, hi: Vec<i64>, sign: Sign) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::MalformedBox(format!("corners {lo:?}, {hi:?}")));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::MalformedBox(format!("corners {lo:?}, {hi:?}")));
        }
        Ok(Block { lo, hi, sign })
    }

    pub fn from_cell(key: &CellKey, sign: Sign) -> Self {
        let (lo, hi) = key.bounds();
        Block { lo, hi, sign }
    }

    pub fn ambient(&self) -> usize {
        self.lo.len()
    }

    pub fn axis_list(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|&a| self.hi[a] > self.lo[a]).collect()
    }

    pub fn dim(&self) -> usize {
        self.axis_list().len()
    }

    /// Number of unit cells of top dimension.
    pub fn volume(&self) -> usize {
        self.axis_list().iter().map(|&a| (self.hi[a] - self.lo[a]) as usize).product()
    }

    /// The unit cells of top dimension, in lexicographic order.
    pub fn unit_cells(&self) -> Vec<CellKey> {
        let axes = self.axis_list();
        let mask = axes.iter().fold(0u32, |m, &a| m | (1 << a));
        let mut bases = vec![self.lo.clone()];
        for &a in &axes {
            bases = bases
                .into_iter()
                .flat_map(|b| {
                    (self.lo[a]..self.hi[a]).map(move |x| {
                        let mut b = b.clone();
                        b[a] = x;
                        b
                    })
                })
                .collect();
        }
        bases.into_iter().map(|base| CellKey { base, axes: mask }).collect()
    }

    /// Unit facets of `∂B` with the orientation induced by `B`.
    pub fn boundary(&self) -> BTreeMap<CellKey, Sign> {
        let axes = self.axis_list();
        let mut out = BTreeMap::new();
        for (j, &a) in axes.iter().enumerate() {
            let face_axes: Vec<usize> = axes.iter().copied().filter(|&b| b != a).collect();
            for (coord, sign) in [(self.lo[a], Sign::parity(j + 1)), (self.hi[a], Sign::parity(j))] {
                let mut lo = self.lo.clone();
                let mut hi = self.hi.clone();
                lo[a] = coord;
                hi[a] = coord;
                let face = Block { lo, hi, sign: Sign::Plus };
                let mask = face_axes.iter().fold(0u32, |m, &b| m | (1 << b));
                for mut key in face.unit_cells() {
                    key.axes = mask;
                    out.insert(key, sign * self.sign);
                }
            }
        }
        out
    }

    /// Whether the closed face `key` lies in the closed block.
    pub fn contains(&self, key: &CellKey) -> bool {
        let (lo, hi) = key.bounds();
        key.ambient() == self.ambient() && (0..self.ambient()).all(|a| self.lo[a] <= lo[a] && hi[a] <= self.hi[a])
    }

    /// Whether the closed face `key` lies in the topological boundary of the
    /// block, taken inside its own affine span.
    pub fn boundary_contains(&self, key: &CellKey) -> bool {
        if !self.contains(key) {
            return false;
        }
        self.axis_list().into_iter().any(|a| !key.spans(a) && (key.base[a] == self.lo[a] || key.base[a] == self.hi[a]))
    }

    /// The face `axis = coord` of the block.
    pub fn face(&self, axis: usize, upper: bool) -> Block {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        if upper {
            lo[axis] = hi[axis];
        } else {
            hi[axis] = lo[axis];
        }
        Block { lo, hi, sign: self.sign }
    }

    pub fn reverse(&self) -> Self {
        Block { lo: self.lo.clone(), hi: self.hi.clone(), sign: self.sign.flip() }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.ambient() {
            if a > 0 {
                f.write_str("x")?;
            }
            write!(f, "[{},{}]", self.lo[a], self.hi[a])?;
        }
        if self.sign == Sign::Minus {
            f.write_str("~")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(base: &[i64], axes: &[usize]) -> CellKey {
        CellKey::new(base.to_vec(), axes).unwrap()
    }

    #[test]
    fn segment_facets() {
        let s = Cell::new(key(&[0], &[0]), Sign::Plus);
        let f = s.oriented_facets();
        assert_eq!(f[0], (key(&[0], &[]), Sign::Minus, Part::Initial));
        assert_eq!(f[1], (key(&[1], &[]), Sign::Plus, Part::Final));
        let r = s.reverse().oriented_facets();
        assert_eq!(r[0], (key(&[0], &[]), Sign::Plus, Part::Final));
    }

    #[test]
    fn square_boundary_is_counterclockwise() {
        let b = Block::new(vec![0, 0], vec![1, 1]).unwrap().boundary();
        assert_eq!(b[&key(&[0, 0], &[0])], Sign::Plus);
        assert_eq!(b[&key(&[1, 0], &[1])], Sign::Plus);
        assert_eq!(b[&key(&[0, 1], &[0])], Sign::Minus);
        assert_eq!(b[&key(&[0, 0], &[1])], Sign::Minus);
        // the same signs as the facets of the unit cell
        let cellwise: BTreeMap<_, _> = key(&[0, 0], &[0, 1]).facets().into_iter().collect();
        assert_eq!(cellwise, b);
    }

    #[test]
    fn boundary_squared_vanishes() {
        // every ridge of the cube appears twice with opposite signs
        let cube = key(&[0, 0, 0], &[0, 1, 2]);
        let mut ridges: BTreeMap<CellKey, i64> = BTreeMap::new();
        for (f, s) in cube.facets() {
            for (r, t) in f.facets() {
                *ridges.entry(r).or_default() += (s * t).as_i64();
            }
        }
        assert_eq!(ridges.len(), 12);
        assert!(ridges.values().all(|&v| v == 0));
    }

    #[test]
    fn closure_and_faces() {
        let sq = key(&[0, 0], &[0, 1]);
        let cl = sq.closure();
        assert_eq!(cl.len(), 9);
        assert!(cl.iter().all(|f| sq.has_face(f)));
        assert!(!sq.has_face(&key(&[2, 0], &[])));
        let blk = Block::new(vec![0, 0], vec![2, 1]).unwrap();
        assert_eq!(blk.volume(), 2);
        assert_eq!(blk.boundary().len(), 6);
        assert!(blk.boundary_contains(&key(&[1, 0], &[])));
        assert!(!blk.boundary_contains(&key(&[1, 0], &[1])));
    }
}
