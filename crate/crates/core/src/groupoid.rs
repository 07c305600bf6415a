//! Graded groupoids of indexes.
//!
//! A graded groupoid is a set of indexes with a partial associative
//! composition, a unique neutral element `e` and an additive grade
//! `ord: I -> ℕ` with `ord⁻¹(0) = {e}`. Every index has finitely many
//! decompositions `k = i ∗ j`, which is what makes the series algebra over
//! it well defined.
//!
//! Three instances are provided:
//!
//! - [`NatMonoid`]: `(ℕ, +)` graded by the identity, the index set of
//!   ordinary `q`-series.
//! - [`IntervalGroupoid`]: intervals `[a, b]` of a window of ℤ, composed like
//!   one-dimensional cobordisms: `[m, b] ∗ [a, m] = [a, b]`.
//! - [`BoxGroupoid`]: axis-aligned boxes of ℤ^d glued along a full face
//!   orthogonal to the time axis (axis 0), graded by cell count.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Debug, Display};

use crate::{Error, Result};

pub trait GradedGroupoid: Clone + PartialEq + Debug + Send + Sync {
    type Element: Clone + Ord + Debug + Display + Send + Sync;

    fn neutral(&self) -> Self::Element;

    fn contains(&self, i: &Self::Element) -> bool;

    /// Grade of `i`; zero exactly at the neutral element.
    fn ord(&self, i: &Self::Element) -> Result<usize>;

    /// `i ∗ j`, or `None` when the composition is undefined.
    fn compose(&self, i: &Self::Element, j: &Self::Element) -> Option<Self::Element>;

    /// Every pair `(i, j)` with `i ∗ j = k`, without duplicates.
    fn decompositions(&self, k: &Self::Element) -> Vec<(Self::Element, Self::Element)>;

    /// All elements of grade at most `n`, in increasing order.
    fn elements_up_to(&self, n: usize) -> Vec<Self::Element>;

    fn parse_element(&self, s: &str) -> Result<Self::Element>;

    fn is_neutral(&self, i: &Self::Element) -> bool {
        *i == self.neutral()
    }
}

fn invalid(i: &impl Display) -> Error {
    Error::InvalidElement(format!("{i}"))
}

/// The additive monoid ℕ. The element `n` stands for the monomial `qⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NatMonoid;

pub fn make_nat_monoid() -> NatMonoid {
    NatMonoid
}

impl GradedGroupoid for NatMonoid {
    type Element = usize;

    fn neutral(&self) -> usize {
        0
    }

    fn contains(&self, _: &usize) -> bool {
        true
    }

    fn ord(&self, i: &usize) -> Result<usize> {
        Ok(*i)
    }

    fn compose(&self, i: &usize, j: &usize) -> Option<usize> {
        i.checked_add(*j)
    }

    fn decompositions(&self, k: &usize) -> Vec<(usize, usize)> {
        (0..=*k).map(|i| (i, k - i)).collect()
    }

    fn elements_up_to(&self, n: usize) -> Vec<usize> {
        (0..=n).collect()
    }

    fn parse_element(&self, s: &str) -> Result<usize> {
        let t = s.trim();
        let t = t.strip_prefix("q^").unwrap_or(t);
        if t == "e" {
            return Ok(0);
        }
        t.parse()
            .map_err(|_| Error::Parse(format!("bad monoid element {s:?}")))
    }
}

/// Element of an [`IntervalGroupoid`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval {
    Neutral,
    Span { start: i64, end: i64 },
}

impl Interval {
    pub fn span(start: i64, end: i64) -> Self {
        Interval::Span { start, end }
    }
}

impl Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Neutral => f.write_str("e"),
            Interval::Span { start, end } => write!(f, "[{start},{end}]"),
        }
    }
}

/// Intervals `[a', b']` with `a ≤ a' < b' ≤ b` inside a window `[a, b]`.
///
/// `α([a', b']) = a'` and `β([a', b']) = b'`; `i ∗ j` is defined when
/// `α(i) = β(j)`. The grade is the length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalGroupoid {
    start: i64,
    end: i64,
}

pub fn make_interval_groupoid(start: i64, end: i64) -> Result<IntervalGroupoid> {
    if start >= end {
        return Err(Error::EmptyWindow);
    }
    Ok(IntervalGroupoid { start, end })
}

impl IntervalGroupoid {
    pub fn window(&self) -> (i64, i64) {
        (self.start, self.end)
    }
}

impl GradedGroupoid for IntervalGroupoid {
    type Element = Interval;

    fn neutral(&self) -> Interval {
        Interval::Neutral
    }

    fn contains(&self, i: &Interval) -> bool {
        match *i {
            Interval::Neutral => true,
            Interval::Span { start, end } => self.start <= start && start < end && end <= self.end,
        }
    }

    fn ord(&self, i: &Interval) -> Result<usize> {
        if !self.contains(i) {
            return Err(invalid(i));
        }
        Ok(match *i {
            Interval::Neutral => 0,
            Interval::Span { start, end } => (end - start) as usize,
        })
    }

    fn compose(&self, i: &Interval, j: &Interval) -> Option<Interval> {
        if !self.contains(i) || !self.contains(j) {
            return None;
        }
        match (i, j) {
            (Interval::Neutral, _) => Some(j.clone()),
            (_, Interval::Neutral) => Some(i.clone()),
            (Interval::Span { start: a, end: b }, Interval::Span { start: c, end: d }) => {
                (a == d).then(|| Interval::span(*c, *b))
            }
        }
    }

    fn decompositions(&self, k: &Interval) -> Vec<(Interval, Interval)> {
        match *k {
            Interval::Neutral => vec![(Interval::Neutral, Interval::Neutral)],
            Interval::Span { start, end } => {
                let mut out = vec![(Interval::Neutral, k.clone()), (k.clone(), Interval::Neutral)];
                for m in start + 1..end {
                    out.push((Interval::span(m, end), Interval::span(start, m)));
                }
                out
            }
        }
    }

    fn elements_up_to(&self, n: usize) -> Vec<Interval> {
        let mut out = vec![Interval::Neutral];
        for a in self.start..self.end {
            for b in a + 1..=self.end {
                if (b - a) as usize <= n {
                    out.push(Interval::span(a, b));
                }
            }
        }
        out.sort();
        out
    }

    fn parse_element(&self, s: &str) -> Result<Interval> {
        let t = s.trim();
        if t == "e" {
            return Ok(Interval::Neutral);
        }
        let bad = || Error::Parse(format!("bad interval {s:?}"));
        let inner = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let i = Interval::span(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        );
        if !self.contains(&i) {
            return Err(invalid(&i));
        }
        Ok(i)
    }
}

/// Element of a [`BoxGroupoid`]: the neutral element or the box
/// `[lo₀, hi₀] × … × [lo_{d-1}, hi_{d-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeBox {
    Neutral,
    Cells { lo: Vec<i64>, hi: Vec<i64> },
}

impl LatticeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        LatticeBox::Cells { lo, hi }
    }

    pub fn volume(&self) -> usize {
        match self {
            LatticeBox::Neutral => 0,
            LatticeBox::Cells { lo, hi } => {
                lo.iter().zip(hi).map(|(l, h)| (h - l).max(0) as usize).product()
            }
        }
    }
}

impl Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeBox::Neutral => f.write_str("e"),
            LatticeBox::Cells { lo, hi } => {
                for (axis, (l, h)) in lo.iter().zip(hi).enumerate() {
                    if axis > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "[{l},{h}]")?;
                }
                Ok(())
            }
        }
    }
}

/// Boxes of ℤ^d inside a window, composed by gluing along a full face
/// orthogonal to axis 0: `i ∗ j` is defined when the lower axis-0 face of `i`
/// is exactly the upper axis-0 face of `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxGroupoid {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

pub fn make_box_groupoid(dim: usize, lo: Vec<i64>, hi: Vec<i64>) -> Result<BoxGroupoid> {
    if dim == 0 {
        return Err(Error::InvalidDimension("box groupoid needs d >= 1".into()));
    }
    if lo.len() != dim || hi.len() != dim {
        return Err(Error::InvalidDimension(format!(
            "window corners must have {dim} coordinates"
        )));
    }
    if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
        return Err(Error::EmptyWindow);
    }
    Ok(BoxGroupoid { lo, hi })
}

impl BoxGroupoid {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn window(&self) -> (&[i64], &[i64]) {
        (&self.lo, &self.hi)
    }
}

impl GradedGroupoid for BoxGroupoid {
    type Element = LatticeBox;

    fn neutral(&self) -> LatticeBox {
        LatticeBox::Neutral
    }

    fn contains(&self, i: &LatticeBox) -> bool {
        match i {
            LatticeBox::Neutral => true,
            LatticeBox::Cells { lo, hi } => {
                lo.len() == self.dim()
                    && hi.len() == self.dim()
                    && (0..self.dim())
                        .all(|a| self.lo[a] <= lo[a] && lo[a] < hi[a] && hi[a] <= self.hi[a])
            }
        }
    }

    fn ord(&self, i: &LatticeBox) -> Result<usize> {
        if !self.contains(i) {
            return Err(invalid(i));
        }
        Ok(i.volume())
    }

    fn compose(&self, i: &LatticeBox, j: &LatticeBox) -> Option<LatticeBox> {
        if !self.contains(i) || !self.contains(j) {
            return None;
        }
        match (i, j) {
            (LatticeBox::Neutral, _) => Some(j.clone()),
            (_, LatticeBox::Neutral) => Some(i.clone()),
            (LatticeBox::Cells { lo: ilo, hi: ihi }, LatticeBox::Cells { lo: jlo, hi: jhi }) => {
                let face_matches =
                    ilo[0] == jhi[0] && ilo[1..] == jlo[1..] && ihi[1..] == jhi[1..];
                face_matches.then(|| LatticeBox::new(jlo.clone(), ihi.clone()))
            }
        }
    }

    fn decompositions(&self, k: &LatticeBox) -> Vec<(LatticeBox, LatticeBox)> {
        match k {
            LatticeBox::Neutral => vec![(LatticeBox::Neutral, LatticeBox::Neutral)],
            LatticeBox::Cells { lo, hi } => {
                let mut out = vec![(LatticeBox::Neutral, k.clone()), (k.clone(), LatticeBox::Neutral)];
                for m in lo[0] + 1..hi[0] {
                    let mut upper_lo = lo.clone();
                    upper_lo[0] = m;
                    let mut lower_hi = hi.clone();
                    lower_hi[0] = m;
                    out.push((
                        LatticeBox::new(upper_lo, hi.clone()),
                        LatticeBox::new(lo.clone(), lower_hi),
                    ));
                }
                out
            }
        }
    }

    fn elements_up_to(&self, n: usize) -> Vec<LatticeBox> {
        let mut out = vec![LatticeBox::Neutral];
        let d = self.dim();
        // All (lo, hi) pairs per axis, combined as a cartesian product.
        let ranges: Vec<Vec<(i64, i64)>> = (0..d)
            .map(|a| {
                let mut r = Vec::new();
                for l in self.lo[a]..self.hi[a] {
                    for h in l + 1..=self.hi[a] {
                        r.push((l, h));
                    }
                }
                r
            })
            .collect();
        let mut idx = vec![0usize; d];
        'outer: loop {
            let lo: Vec<i64> = (0..d).map(|a| ranges[a][idx[a]].0).collect();
            let hi: Vec<i64> = (0..d).map(|a| ranges[a][idx[a]].1).collect();
            let b = LatticeBox::new(lo, hi);
            if b.volume() <= n {
                out.push(b);
            }
            for a in 0..d {
                idx[a] += 1;
                if idx[a] < ranges[a].len() {
                    continue 'outer;
                }
                idx[a] = 0;
            }
            break;
        }
        out.sort();
        out
    }

    fn parse_element(&self, s: &str) -> Result<LatticeBox> {
        let t = s.trim();
        if t == "e" {
            return Ok(LatticeBox::Neutral);
        }
        let bad = || Error::Parse(format!("bad box {s:?}"));
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in t.split('x') {
            let inner = part
                .trim()
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            lo.push(a.trim().parse().map_err(|_| bad())?);
            hi.push(b.trim().parse().map_err(|_| bad())?);
        }
        let b = LatticeBox::new(lo, hi);
        if !self.contains(&b) {
            return Err(invalid(&b));
        }
        Ok(b)
    }
}
