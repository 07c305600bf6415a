//! Extension of a cosurface on `k`-cells to `(k+1)`-cells:
//! `c_K(A) = Π_{s ∈ K, s ⊂ ∂A} c(φ_A(s))`, ordered by `K`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cell::{Block, CellKey, Sign};
use super::complex::{phi_a, Complex, Phi};
use super::surface::Surface;
use super::values::Cosurface;
use crate::algebra::FiniteGroup;
use crate::{Error, Result};

/// `c_K(A)`. Every unit facet of `∂A` must be carried by a cell of `K`
/// lying on `∂A`.
pub fn dimension_extend(c: &Cosurface, k: &Complex, a: &Block) -> Result<usize> {
    let g = c.group();
    let boundary = a.boundary();
    let mut covered = BTreeSet::new();
    let mut acc = g.identity();
    for s in k.cells() {
        let phi = phi_a(&boundary, s)?;
        if phi == Phi::Empty {
            continue;
        }
        covered.extend(s.parts().iter().map(|(key, _)| key));
        let v = c.value(s)?;
        acc = g.mul(acc, if phi == Phi::Same { v } else { g.inv(v) });
    }
    match boundary.keys().find(|f| !covered.contains(f)) {
        Some(f) => Err(Error::MissingValue(format!("facet {f} of {a} is not in the complex"))),
        None => Ok(acc),
    }
}

/// Positively oriented unit `(k+1)`-cells whose whole boundary is carried by
/// `k`.
fn bounded_cells(k: &Complex) -> Vec<CellKey> {
    let carried: BTreeSet<&CellKey> = k.cells().iter().flat_map(|s| s.parts().iter().map(|(key, _)| key)).collect();
    let mut candidates = BTreeSet::new();
    for key in &carried {
        for a in 0..key.ambient() {
            if key.spans(a) {
                continue;
            }
            let up = CellKey { base: key.base.clone(), axes: key.axes | (1 << a) };
            let mut down = up.clone();
            down.base[a] -= 1;
            candidates.insert(up);
            candidates.insert(down);
        }
    }
    candidates.into_iter().filter(|cand| cand.facets().iter().all(|(f, _)| carried.contains(f))).collect()
}

fn extension_values(c: &Cosurface, k: &Complex) -> Result<Cosurface> {
    let mut values = BTreeMap::new();
    for cell in bounded_cells(k) {
        let v = dimension_extend(c, k, &Block::from_cell(&cell, Sign::Plus))?;
        values.insert(cell, v);
    }
    Cosurface::new(c.group().clone(), values)
}

/// Cosurface on the unit `(k+1)`-cells bounded by `K`, for abelian groups.
pub fn extend_abelian(c: &Cosurface, k: &Complex) -> Result<Cosurface> {
    if !c.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    extension_values(c, k)
}

/// Result of [`extend_nonabelian`].
#[derive(Clone, PartialEq, Debug)]
pub struct Extension {
    /// `c''`: the original values on `K`, central values on the other cells.
    pub base: Cosurface,
    /// Values on the unit `(k+1)`-cells bounded by the overcomplex.
    pub top: Cosurface,
}

/// Extension along an overcomplex `over ⊃ K` (same relative order), whose
/// cells outside `K` are unit cells valued in the centre `Z(G)`; missing
/// entries of `center` default to `e`.
pub fn extend_nonabelian(
    c: &Cosurface,
    k: &Complex,
    over: &Complex,
    center: &BTreeMap<CellKey, usize>,
) -> Result<Extension> {
    let g = c.group();
    let mut last = None;
    for s in k.cells() {
        let pos = over.position(s).ok_or_else(|| Error::StructureMismatch("a cell of K is missing".into()))?;
        if last.is_some_and(|l| pos <= l) {
            return Err(Error::StructureMismatch("the overcomplex reorders K".into()));
        }
        last = Some(pos);
    }
    let in_k: BTreeSet<&CellKey> = k.cells().iter().flat_map(|s| s.parts().iter().map(|(key, _)| key)).collect();
    if let Some(key) = center.keys().find(|key| in_k.contains(key)) {
        return Err(Error::StructureMismatch(format!("central value given on {key}, a cell of K")));
    }
    let mut base = c.clone();
    for s in over.cells() {
        if k.position(s).is_some() {
            continue;
        }
        if !s.is_unit() {
            return Err(Error::StructureMismatch("cells outside K must be unit cells".into()));
        }
        let key = &s.parts()[0].0;
        let z = center.get(key).copied().unwrap_or(g.identity());
        if z >= g.order() || !g.is_central(z) {
            return Err(Error::NotCentral(format!("value {z} on {key}")));
        }
        base.set(key.clone(), z)?;
    }
    let top = extension_values(&base, over)?;
    Ok(Extension { base, top })
}

/// All partitions of `region` into sub-blocks of the same dimension.
pub fn block_partitions(region: &Block) -> Vec<Vec<Block>> {
    let cells = region.unit_cells();
    let mut out = Vec::new();
    let mut covered = vec![false; cells.len()];
    let index: BTreeMap<&CellKey, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let axes = region.axis_list();
    partition_rec(region, &cells, &index, &axes, &mut covered, &mut Vec::new(), &mut out);
    out
}

fn partition_rec(
    region: &Block,
    cells: &[CellKey],
    index: &BTreeMap<&CellKey, usize>,
    axes: &[usize],
    covered: &mut [bool],
    current: &mut Vec<Block>,
    out: &mut Vec<Vec<Block>>,
) {
    let Some(first) = covered.iter().position(|c| !c) else {
        out.push(current.clone());
        return;
    };
    let lo = cells[first].base.clone();
    // candidate upper corners
    let mut his: Vec<Vec<i64>> = vec![lo.clone()];
    for &a in axes {
        his = his
            .into_iter()
            .flat_map(|h| {
                (lo[a] + 1..=region.hi[a]).map(move |x| {
                    let mut h = h.clone();
                    h[a] = x;
                    h
                })
            })
            .collect();
    }
    for hi in his {
        let piece = Block { lo: lo.clone(), hi, sign: region.sign };
        let ids: Vec<usize> = piece.unit_cells().iter().map(|c| index[c]).collect();
        if ids.iter().any(|&i| covered[i]) {
            continue;
        }
        for &i in &ids {
            covered[i] = true;
        }
        current.push(piece);
        partition_rec(region, cells, index, axes, covered, current, out);
        current.pop();
        for &i in &ids {
            covered[i] = false;
        }
    }
}

/// Exhaustive check of `c_K(R) = c_{K'}(A₁) ⋯ c_{K'}(A_l)` over all values
/// of the unit cells of `K ∪ K'`.
///
/// Both sides are evaluated from the `φ` incidences of the complexes; only
/// the cells touched by a change of values are recomputed between
/// consecutive assignments.
#[derive(Clone, Debug)]
pub struct RefinementCheck {
    keys: Vec<CellKey>,
    fixed: Vec<Option<usize>>,
    lhs: Vec<(usize, Sign)>,
    pieces: Vec<Vec<(usize, Sign)>>,
    key_pieces: Vec<Vec<usize>>,
    key_in_lhs: Vec<bool>,
}

/// Outcome of a (partial) run of [`RefinementCheck`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RefinementOutcome {
    pub assignments: u64,
    pub failures: u64,
    /// First failing assignment, indexed like [`RefinementCheck::keys`].
    pub witness: Option<Vec<usize>>,
}

impl RefinementOutcome {
    pub fn merge(&mut self, other: RefinementOutcome) {
        self.assignments += other.assignments;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

fn unit_boundary_complex(blocks: &[&Block]) -> Result<Complex> {
    let keys: BTreeSet<CellKey> = blocks.iter().flat_map(|b| b.boundary().into_keys()).collect();
    Complex::new(keys.into_iter().map(|k| Surface::unit(k, Sign::Plus)).collect())
}

impl RefinementCheck {
    /// `K` = boundary cells of `region`, `K'` = boundary cells of the
    /// pieces, both in lexicographic order and positively oriented.
    pub fn new(region: &Block, pieces: &[Block]) -> Result<Self> {
        let coarse = unit_boundary_complex(&[region])?;
        let fine = unit_boundary_complex(&pieces.iter().collect::<Vec<_>>())?;
        Self::with_complexes(&coarse, &fine, region, pieces)
    }

    /// Pieces are multiplied in the given order.
    pub fn with_complexes(coarse: &Complex, fine: &Complex, region: &Block, pieces: &[Block]) -> Result<Self> {
        let mut keys = BTreeSet::new();
        for s in coarse.cells().iter().chain(fine.cells()) {
            if !s.is_unit() {
                return Err(Error::StructureMismatch("refinement check requires unit cells".into()));
            }
            keys.insert(s.parts()[0].0.clone());
        }
        let keys: Vec<CellKey> = keys.into_iter().collect();
        let id: BTreeMap<&CellKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let incidence = |k: &Complex, a: &Block| -> Result<Vec<(usize, Sign)>> {
            let inc = k.incidence(a)?;
            let carried: BTreeSet<&CellKey> = inc.iter().map(|&(i, _)| &k.cells()[i].parts()[0].0).collect();
            if let Some(f) = a.boundary().keys().find(|f| !carried.contains(f)) {
                return Err(Error::MissingValue(format!("facet {f} of {a} is not in the complex")));
            }
            Ok(inc
                .into_iter()
                .map(|(i, phi)| {
                    let (key, sign) = &k.cells()[i].parts()[0];
                    (id[key], phi * *sign)
                })
                .collect())
        };
        let lhs = incidence(coarse, region)?;
        let pieces: Vec<Vec<(usize, Sign)>> = pieces.iter().map(|p| incidence(fine, p)).collect::<Result<_>>()?;
        let mut key_pieces = vec![Vec::new(); keys.len()];
        for (j, inc) in pieces.iter().enumerate() {
            for &(i, _) in inc {
                key_pieces[i].push(j);
            }
        }
        let mut key_in_lhs = vec![false; keys.len()];
        for &(i, _) in &lhs {
            key_in_lhs[i] = true;
        }
        Ok(RefinementCheck { fixed: vec![None; keys.len()], keys, lhs, pieces, key_pieces, key_in_lhs })
    }

    pub fn keys(&self) -> &[CellKey] {
        &self.keys
    }

    /// Pins the value of one cell.
    pub fn fix(&mut self, key: &CellKey, value: usize) -> Result<()> {
        let i = self.keys.iter().position(|k| k == key).ok_or_else(|| Error::MissingValue(format!("{key}")))?;
        self.fixed[i] = Some(value);
        Ok(())
    }

    /// Indexes of the cells that are enumerated.
    pub fn free(&self) -> Vec<usize> {
        (0..self.keys.len()).filter(|&i| self.fixed[i].is_none()).collect()
    }

    fn product(table: &[usize], inv: &[usize], n: usize, values: &[usize], inc: &[(usize, Sign)]) -> usize {
        inc.iter().fold(0, |acc, &(i, s)| {
            let v = values[i];
            table[acc * n + if s == Sign::Plus { v } else { inv[v] }]
        })
    }

    /// `(c_K(R), Π_j c_{K'}(A_j))` for one assignment.
    pub fn evaluate(&self, group: &FiniteGroup, values: &[usize]) -> (usize, usize) {
        let (t, inv, n) = (group.table(), group.inverses(), group.order());
        let lhs = Self::product(t, inv, n, values, &self.lhs);
        let rhs = self.pieces.iter().fold(0, |acc, p| t[acc * n + Self::product(t, inv, n, values, p)]);
        (lhs, rhs)
    }

    /// Enumerates all assignments of the free cells whose last
    /// `shard.len()` free cells take the values in `shard`.
    pub fn run(&self, group: &FiniteGroup, shard: &[usize]) -> RefinementOutcome {
        let (t, inv, n) = (group.table(), group.inverses(), group.order());
        let free = self.free();
        let split = free.len().saturating_sub(shard.len());
        let (digits, pinned) = free.split_at(split);
        let mut values: Vec<usize> = self.fixed.iter().map(|v| v.unwrap_or(0)).collect();
        for (&i, &v) in pinned.iter().zip(shard) {
            values[i] = v;
        }
        let mut piece_values: Vec<usize> =
            self.pieces.iter().map(|p| Self::product(t, inv, n, &values, p)).collect();
        let mut lhs = Self::product(t, inv, n, &values, &self.lhs);
        let mut dirty = vec![false; self.pieces.len()];
        let mut out = RefinementOutcome::default();
        loop {
            let rhs = piece_values.iter().fold(0, |acc, &v| t[acc * n + v]);
            out.assignments += 1;
            if rhs != lhs {
                out.failures += 1;
                if out.witness.is_none() {
                    out.witness = Some(values.clone());
                }
            }
            // odometer step
            let mut lhs_dirty = false;
            let mut carried = true;
            for &i in digits {
                values[i] += 1;
                lhs_dirty |= self.key_in_lhs[i];
                for &j in &self.key_pieces[i] {
                    dirty[j] = true;
                }
                if values[i] < n {
                    carried = false;
                    break;
                }
                values[i] = 0;
            }
            if carried {
                break;
            }
            if lhs_dirty {
                lhs = Self::product(t, inv, n, &values, &self.lhs);
            }
            for (j, d) in dirty.iter_mut().enumerate() {
                if *d {
                    piece_values[j] = Self::product(t, inv, n, &values, &self.pieces[j]);
                    *d = false;
                }
            }
        }
        out
    }
}

/// The unit cube `[0,1]³` with vertices
/// `A=000, B=100, C=110, D=010, E=001, F=101, G=111, H=011`.
#[derive(Clone, Debug)]
pub struct UnitCube {
    /// `AB, BF, BC, CD, CG, AE, EF, FG, GH, HD, DA, EH`, each oriented from
    /// its first vertex to its second.
    pub edges: Complex,
    /// `ABCD, ABFE, BCGF, CDGH, AEHD, EFGH`, oriented as `∂[0,1]³`.
    pub faces: Complex,
    pub cube: Block,
}

pub fn unit_cube() -> UnitCube {
    let vertex = |c: char| -> [i64; 3] {
        match c {
            'A' => [0, 0, 0],
            'B' => [1, 0, 0],
            'C' => [1, 1, 0],
            'D' => [0, 1, 0],
            'E' => [0, 0, 1],
            'F' => [1, 0, 1],
            'G' => [1, 1, 1],
            _ => [0, 1, 1],
        }
    };
    let edge = |name: &str| -> Surface {
        let mut cs = name.chars();
        let (x, y) = (vertex(cs.next().unwrap()), vertex(cs.next().unwrap()));
        let a = (0..3).find(|&a| x[a] != y[a]).unwrap();
        let base: Vec<i64> = (0..3).map(|i| x[i].min(y[i])).collect();
        let sign = if y[a] > x[a] { Sign::Plus } else { Sign::Minus };
        Surface::unit(CellKey { base, axes: 1 << a }, sign)
    };
    let cube = Block { lo: vec![0, 0, 0], hi: vec![1, 1, 1], sign: Sign::Plus };
    let boundary = cube.boundary();
    let face = |name: &str| -> Surface {
        let pts: Vec<[i64; 3]> = name.chars().map(vertex).collect();
        let fixed = (0..3).find(|&a| pts.iter().all(|p| p[a] == pts[0][a])).unwrap();
        let mut base = vec![0i64; 3];
        base[fixed] = pts[0][fixed];
        let key = CellKey { base, axes: 0b111 & !(1 << fixed) };
        let sign = boundary[&key];
        Surface::unit(key, sign)
    };
    let edges = ["AB", "BF", "BC", "CD", "CG", "AE", "EF", "FG", "GH", "HD", "DA", "EH"];
    let faces = ["ABCD", "ABFE", "BCGF", "CDGH", "AEHD", "EFGH"];
    UnitCube {
        edges: Complex::new(edges.iter().map(|e| edge(e)).collect()).expect("distinct edges"),
        faces: Complex::new(faces.iter().map(|f| face(f)).collect()).expect("distinct faces"),
        cube,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    fn e(b: [i64; 2], a: usize, s: Sign) -> Surface {
        Surface::unit(CellKey { base: b.to_vec(), axes: 1 << a }, s)
    }

    #[test]
    fn square_product_follows_complex_order() {
        let g = Arc::new(FiniteGroup::symmetric3());
        // bottom, right, top, left; top and left run against ∂A
        let k = Complex::new(vec![
            e([0, 0], 0, Sign::Plus),
            e([1, 0], 1, Sign::Plus),
            e([0, 1], 0, Sign::Plus),
            e([0, 0], 1, Sign::Plus),
        ])
        .unwrap();
        let vals = [1usize, 3, 2, 4];
        let c = Cosurface::from_fn(g.clone(), k.cells().iter().map(|s| s.parts()[0].0.clone()), |key| {
            vals[k.cells().iter().position(|s| &s.parts()[0].0 == key).unwrap()]
        })
        .unwrap();
        let sq = Block::new(vec![0, 0], vec![1, 1]).unwrap();
        let want = g.product([1, 3, g.inv(2), g.inv(4)]);
        assert_eq!(dimension_extend(&c, &k, &sq).unwrap(), want);
        let trivial = Cosurface::from_fn(g.clone(), c.values().keys().cloned(), |_| 0).unwrap();
        assert_eq!(dimension_extend(&trivial, &k, &sq).unwrap(), 0);
        let short = k.select(&[0, 1, 2]);
        assert!(matches!(dimension_extend(&c, &short, &sq), Err(Error::MissingValue(_))));
    }

    #[test]
    fn partitions_of_small_blocks() {
        let count = |w: i64, h: i64| block_partitions(&Block::new(vec![0, 0], vec![w, h]).unwrap()).len();
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(2, 1), 2);
        assert_eq!(count(3, 1), 4);
        assert_eq!(count(2, 2), 8);
        for p in block_partitions(&Block::new(vec![0, 0], vec![3, 2]).unwrap()) {
            assert_eq!(p.iter().map(Block::volume).sum::<usize>(), 6);
        }
    }

    #[test]
    fn abelian_refinement_small() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let r = Block::new(vec![0, 0], vec![2, 1]).unwrap();
        for pieces in block_partitions(&r) {
            let check = RefinementCheck::new(&r, &pieces).unwrap();
            let out = check.run(&z3, &[]);
            assert_eq!(out.assignments, 3u64.pow(check.keys().len() as u32));
            assert_eq!(out.failures, 0);
        }
    }

    #[test]
    fn checker_agrees_with_dimension_extend() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let r = Block::new(vec![0, 0], vec![2, 1]).unwrap();
        let pieces = block_partitions(&r).pop().unwrap();
        let check = RefinementCheck::new(&r, &pieces).unwrap();
        let coarse = unit_boundary_complex(&[&r]).unwrap();
        let fine = unit_boundary_complex(&pieces.iter().collect::<Vec<_>>()).unwrap();
        for seed in 0..50usize {
            let values: Vec<usize> = (0..check.keys().len()).map(|i| (seed * 7 + i * i * 3 + seed / 3) % 6).collect();
            let c = Cosurface::from_fn(s3.clone(), check.keys().iter().cloned(), |k| {
                values[check.keys().iter().position(|x| x == k).unwrap()]
            })
            .unwrap();
            let lhs = dimension_extend(&c, &coarse, &r).unwrap();
            let rhs = s3.product(pieces.iter().map(|p| dimension_extend(&c, &fine, p).unwrap()));
            assert_eq!(check.evaluate(&s3, &values), (lhs, rhs));
        }
    }

    #[test]
    fn nonabelian_center_is_enforced() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let k = unit_boundary_complex(&[&Block::new(vec![0, 0], vec![2, 1]).unwrap()]).unwrap();
        let mid = e([1, 0], 1, Sign::Plus);
        let mut cells = k.cells().to_vec();
        cells.push(mid.clone());
        let over = Complex::new(cells).unwrap();
        let c = Cosurface::from_fn(s3.clone(), k.cells().iter().map(|s| s.parts()[0].0.clone()), |_| 1).unwrap();
        let mut center = BTreeMap::new();
        center.insert(mid.parts()[0].0.clone(), 1);
        assert!(matches!(extend_nonabelian(&c, &k, &over, &center), Err(Error::NotCentral(_))));
        let ext = extend_nonabelian(&c, &k, &over, &BTreeMap::new()).unwrap();
        assert_eq!(ext.base.values()[&mid.parts()[0].0], 0);
        assert_eq!(ext.top.values().len(), 2);
        assert!(matches!(extend_abelian(&c, &k), Err(Error::NotAbelian)));
    }

    #[test]
    fn cube_faces_close_up_for_abelian_groups() {
        let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let cube = unit_cube();
        assert!(cube.faces.is_saturated(core::slice::from_ref(&cube.cube)));
        let keys: Vec<CellKey> = cube.edges.cells().iter().map(|s| s.parts()[0].0.clone()).collect();
        for seed in 0..20usize {
            let c = Cosurface::from_fn(z4.clone(), keys.iter().cloned(), |k| {
                (keys.iter().position(|x| x == k).unwrap() * (seed + 1) + seed) % 4
            })
            .unwrap();
            let faces = extend_abelian(&c, &cube.edges).unwrap();
            assert_eq!(faces.values().len(), 6);
            assert_eq!(dimension_extend(&faces, &cube.faces, &cube.cube).unwrap(), 0);
        }
    }
}
