//! Small complexes used by the check suites.

use cosurf_core::cosurface::{Block, CellKey, Complex, Sign, Surface};
use cosurf_core::measure::{CobordismBox, CobordismComplex};
use cosurf_core::Result;

/// Positively oriented point of the line.
pub fn point(x: i64) -> Surface {
    Surface::unit(CellKey::point(vec![x]), Sign::Plus)
}

/// Positively oriented unit edge of the plane along `axis`.
pub fn edge(base: [i64; 2], axis: usize) -> Surface {
    Surface::unit(CellKey { base: base.to_vec(), axes: 1 << axis }, Sign::Plus)
}

pub fn block(lo: &[i64], hi: &[i64]) -> Block {
    Block::new(lo.to_vec(), hi.to_vec()).expect("nonempty block")
}

/// Points `0, …, n` with the unit intervals as domains.
pub fn chain(n: i64) -> (Complex, Vec<Block>) {
    let k = Complex::new((0..=n).map(point).collect()).expect("distinct points");
    (k, (0..n).map(|x| block(&[x], &[x + 1])).collect())
}

/// The boundary edges of the unit square in lexicographic order.
pub fn plaquette() -> (Complex, Vec<Block>) {
    let sq = block(&[0, 0], &[1, 1]);
    let cells = sq.boundary().into_keys().map(|k| Surface::unit(k, Sign::Plus)).collect();
    (Complex::new(cells).expect("distinct edges"), vec![sq])
}

/// `[0,2] × [0,1]` ordered as left square, shared edge, right square, so
/// that the shared edge splits.
pub fn strip() -> (Complex, Vec<Block>, usize) {
    let cells = vec![
        edge([0, 0], 0),
        edge([0, 0], 1),
        edge([0, 1], 0),
        edge([1, 0], 1),
        edge([1, 0], 0),
        edge([1, 1], 0),
        edge([2, 0], 1),
    ];
    let k = Complex::new(cells).expect("distinct edges");
    (k, vec![block(&[0, 0], &[1, 1]), block(&[1, 0], &[2, 1])], 3)
}

pub fn cobordism(lo: &[i64], hi: &[i64]) -> CobordismBox {
    CobordismBox::new(block(lo, hi)).expect("nonempty box")
}

/// `[x, x+1]` with its two endpoints.
pub fn unit_interval(x: i64) -> Result<CobordismComplex> {
    let k = Complex::new(vec![point(x), point(x + 1)])?;
    CobordismComplex::new(cobordism(&[x], &[x + 1]), k, vec![block(&[x], &[x + 1])])
}

/// `[t, t+1] × [0, 1]` with edges bottom, left, top, right.
pub fn square(t: i64) -> Result<CobordismComplex> {
    let k = Complex::new(vec![edge([t, 0], 0), edge([t, 0], 1), edge([t, 1], 0), edge([t + 1, 0], 1)])?;
    let b = block(&[t, 0], &[t + 1, 1]);
    CobordismComplex::new(CobordismBox::new(b.clone())?, k, vec![b])
}

/// `[t, t+1] × [0, 2]` cut into two unit squares, lower square first.
pub fn column(t: i64) -> Result<CobordismComplex> {
    let k = Complex::new(vec![
        edge([t, 0], 0),
        edge([t, 0], 1),
        edge([t, 1], 0),
        edge([t + 1, 0], 1),
        edge([t, 1], 1),
        edge([t, 2], 0),
        edge([t + 1, 1], 1),
    ])?;
    let doms = vec![block(&[t, 0], &[t + 1, 1]), block(&[t, 1], &[t + 1, 2])];
    CobordismComplex::new(cobordism(&[t, 0], &[t + 1, 2]), k, doms)
}
