use alloc::vec::Vec;
use core::fmt;

use super::Algebra;
use crate::rational::{Rational, Scalar};
use crate::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, entries: (0..n * n).map(|_| S::zero()).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = S::one();
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.entries[i * n + j] = S::one();
        m
    }

    pub fn diag(values: Vec<S>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::StructureMismatch("matrix rows must form a square".into()));
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { n: self.n, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        let cur = core::mem::replace(&mut out.entries[i * n + j], S::zero());
                        out.entries[i * n + j] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { n: self.n, entries: self.entries.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.entries[col * n + j] = a.entries[col * n + j].clone() / p.clone();
                inv.entries[col * n + j] = inv.entries[col * n + j].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.entries[r * n + j] = a.entries[r * n + j].clone() - f.clone() * a.entries[col * n + j].clone();
                    inv.entries[r * n + j] =
                        inv.entries[r * n + j].clone() - f.clone() * inv.entries[col * n + j].clone();
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<S: Scalar> Algebra for Matrix<S> {
    fn zero_like(&self) -> Self {
        Self::zeros(self.n)
    }

    fn one_like(&self) -> Self {
        Self::identity(self.n)
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        Matrix::add(self, rhs)
    }

    fn neg(&self) -> Self {
        Matrix { n: self.n, entries: self.entries.iter().map(|a| -a.clone()).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Matrix::mul(self, rhs)
    }

    fn scale(&self, r: &Rational) -> Self {
        Matrix::scale(self, &S::from_rational(r))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.n == other.n
    }

    fn magnitude(&self) -> f64 {
        self.entries.iter().map(|a| a.abs_f64()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_of_unipotent() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.inverse().unwrap(), m(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn inverse_with_pivoting() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv.mul(&a), Matrix::identity(3));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn ring_identities() {
        let a = m(&[&[1, 2], &[-3, 4]]);
        let b = m(&[&[0, 5], &[1, 1]]);
        let c = m(&[&[2, 0], &[7, -1]]);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_ne!(a.mul(&b), b.mul(&a));
        assert!(Matrix::from_rows(vec![vec![int(1)], vec![int(2)]]).is_err());
    }
}
