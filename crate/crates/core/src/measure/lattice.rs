//! Unnormalized densities of lattice gauge and Higgs models.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::FiniteGroup;
use crate::cosurface::{Block, CellKey, Cosurface, Sign};
use crate::{Error, Result};

/// `C(∂γ)`: the loop around a unit plaquette, from its base corner along
/// its first axis, then counterclockwise.
pub fn plaquette_holonomy(c: &Cosurface, plaquette: &Block) -> Result<usize> {
    let axes = plaquette.axis_list();
    if axes.len() != 2 || plaquette.volume() != 1 {
        return Err(Error::InvalidDimension(format!("{plaquette} is not a unit plaquette")));
    }
    let (a, b) = (axes[0], axes[1]);
    let base = plaquette.lo.clone();
    let shifted = |axis: usize| {
        let mut p = base.clone();
        p[axis] += 1;
        p
    };
    let edge = |p: Vec<i64>, axis: usize| CellKey { base: p, axes: 1 << axis };
    let loop_ = [
        (edge(base.clone(), a), Sign::Plus),
        (edge(shifted(a), b), Sign::Plus),
        (edge(shifted(b), a), Sign::Minus),
        (edge(base.clone(), b), Sign::Minus),
    ];
    let g = c.group();
    let mut acc = g.identity();
    for (key, sign) in &loop_ {
        acc = g.mul(acc, c.unit_value(key, *sign)?);
    }
    Ok(acc)
}

/// `exp(−β Σ_γ U(C(∂γ)))` for an invariant `U` given by its values.
pub fn gibbs_density(c: &Cosurface, beta: f64, u: &[f64], plaquettes: &[Block]) -> Result<f64> {
    let g = c.group();
    if u.len() != g.order() {
        return Err(Error::StructureMismatch("one value of U per group element expected".into()));
    }
    if g.classes().iter().any(|cl| cl.iter().any(|&x| u[x] != u[cl[0]])) {
        return Err(Error::NotClassFunction);
    }
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::OutOfDomain(format!("beta = {beta}")));
    }
    let mut action = 0.0;
    for p in plaquettes {
        action += u[plaquette_holonomy(c, p)?];
    }
    Ok(libm::exp(-beta * action))
}

/// An orthogonal representation of a finite group on `ℝ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    matrices: Vec<[[f64; 2]; 2]>,
}

impl Representation {
    /// Checks the homomorphism property and orthogonality to `1e-12`.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<[[f64; 2]; 2]>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::StructureMismatch("one matrix per group element expected".into()));
        }
        let close = |m: &[[f64; 2]; 2], n: &[[f64; 2]; 2]| (0..2).all(|i| (0..2).all(|j| (m[i][j] - n[i][j]).abs() < 1e-12));
        for x in group.elements() {
            let m = &matrices[x];
            let mtm = mat_mul(&transpose(m), m);
            if !close(&mtm, &[[1.0, 0.0], [0.0, 1.0]]) {
                return Err(Error::StructureMismatch(format!("matrix of {} is not orthogonal", group.label(x))));
            }
            for y in group.elements() {
                if !close(&mat_mul(m, &matrices[y]), &matrices[group.mul(x, y)]) {
                    return Err(Error::StructureMismatch("not a homomorphism".into()));
                }
            }
        }
        Ok(Representation { group, matrices })
    }

    /// `ℤ_n` acting by rotations, `k ↦ R(2πk/n)`.
    pub fn rotations(group: Arc<FiniteGroup>) -> Result<Self> {
        let n = group.order();
        let one = group.elements().find(|&x| {
            let mut p = x;
            let mut k = 1;
            while p != group.identity() {
                p = group.mul(p, x);
                k += 1;
            }
            k == n
        });
        let Some(gen) = one else {
            return Err(Error::InvalidGroup(format!("{} is not cyclic", group.name())));
        };
        let mut matrices = alloc::vec![[[0.0; 2]; 2]; n];
        let mut p = group.identity();
        for k in 0..n {
            let th = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            let (s, c) = (libm::sin(th), libm::cos(th));
            matrices[p] = [[c, -s], [s, c]];
            p = group.mul(p, gen);
        }
        Self::new(group, matrices)
    }

    pub fn apply(&self, g: usize, v: [f64; 2]) -> [f64; 2] {
        let m = &self.matrices[g];
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
}

fn transpose(m: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

fn mat_mul(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Parameters `(λ, μ, B)` of the Higgs density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HiggsCoupling {
    pub lambda: f64,
    pub mu: f64,
    pub b: f64,
}

/// `exp(−(λ/2) Σ_x (B + μ²/λ)|φ(x)|²) · exp(−(λ/2) Σ_{x,y} ⟨φ(x), ρ(C(xy)) φ(y)⟩)`,
/// the second sum over ordered nearest-neighbour pairs of `Λ`.
pub fn higgs_density(
    phi: &BTreeMap<Vec<i64>, [f64; 2]>,
    c: &Cosurface,
    coupling: HiggsCoupling,
    rho: &Representation,
    sites: &[Vec<i64>],
) -> Result<f64> {
    let HiggsCoupling { lambda, mu, b } = coupling;
    if lambda.is_nan() || mu.is_nan() || lambda <= 0.0 || mu <= 0.0 {
        return Err(Error::OutOfDomain(format!("lambda = {lambda}, mu = {mu}")));
    }
    if **c.group() != *rho.group {
        return Err(Error::GroupMismatch);
    }
    let field = |x: &Vec<i64>| phi.get(x).copied().ok_or_else(|| Error::MissingValue(format!("field at {x:?}")));
    let mut mass = 0.0;
    for x in sites {
        let v = field(x)?;
        mass += v[0] * v[0] + v[1] * v[1];
    }
    let mut hop = 0.0;
    for x in sites {
        for y in sites {
            let diff: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
            let Some(axis) = diff.iter().position(|&d| d != 0) else { continue };
            if diff[axis].abs() != 1 || diff.iter().filter(|&&d| d != 0).count() != 1 {
                continue;
            }
            let base = if diff[axis] > 0 { x.clone() } else { y.clone() };
            let sign = if diff[axis] > 0 { Sign::Plus } else { Sign::Minus };
            let g = c.unit_value(&CellKey { base, axes: 1 << axis }, sign)?;
            let (vx, vy) = (field(x)?, rho.apply(g, field(y)?));
            hop += vx[0] * vy[0] + vx[1] * vy[1];
        }
    }
    Ok(libm::exp(-(lambda / 2.0) * (b + mu * mu / lambda) * mass) * libm::exp(-(lambda / 2.0) * hop))
}
