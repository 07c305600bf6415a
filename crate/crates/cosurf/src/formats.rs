//! JSON formats for groups, series and complexes, and the groupoid syntax
//! of the command line.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use cosurf_core::algebra::{FiniteGroup, Matrix};
use cosurf_core::cosurface::{Block, CellKey, Complex, Sign, Surface};
use cosurf_core::measure::{CobordismBox, CobordismComplex};
use cosurf_core::groupoid::{
    make_box_groupoid, make_interval_groupoid, BoxGroupoid, GradedGroupoid, IntervalGroupoid, NatMonoid,
};
use cosurf_core::rational::{format_rational, parse_rational};
use cosurf_core::series::FormalSeries;
use cosurf_core::Rational;
use serde::{Deserialize, Serialize};

/// A Cayley table: `table[i][j]` is the label of `elements[i] · elements[j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTable {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl GroupTable {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let labels = g.labels().to_vec();
        let table = g.elements().map(|a| g.elements().map(|b| labels[g.mul(a, b)].clone()).collect()).collect();
        GroupTable { name: Some(g.name().to_string()), elements: labels, table }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let index = |l: &str| {
            self.elements.iter().position(|e| e == l).ok_or_else(|| anyhow!("unknown element {l:?} in table"))
        };
        if self.table.len() != self.elements.len() {
            bail!("table has {} rows for {} elements", self.table.len(), self.elements.len());
        }
        let mut flat = Vec::with_capacity(self.elements.len().pow(2));
        for row in &self.table {
            if row.len() != self.elements.len() {
                bail!("table row of length {}", row.len());
            }
            for l in row {
                flat.push(index(l)?);
            }
        }
        let name = self.name.clone().unwrap_or_else(|| "table".into());
        Ok(FiniteGroup::from_table(name, self.elements.clone(), flat, None)?)
    }
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let table: GroupTable = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    table.to_group()
}

/// A built-in group by name, or a Cayley table file.
pub fn resolve_group(name: Option<&str>, table_file: Option<&Path>) -> Result<FiniteGroup> {
    match (name, table_file) {
        (Some(_), Some(_)) => bail!("give either --group or --table-file"),
        (_, Some(p)) => load_group(p),
        (Some(n), None) => Ok(FiniteGroup::by_name(n)?),
        (None, None) => bail!("a group is required"),
    }
}

/// `nat`, `interval:A..B` or `box:D:LO..HI` with comma-separated corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidSpec {
    Nat,
    Interval(i64, i64),
    Box { dim: usize, lo: Vec<i64>, hi: Vec<i64> },
}

impl FromStr for GroupoidSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let ints = |t: &str| -> Result<Vec<i64>> {
            t.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| anyhow!("{x:?}: {e}"))).collect()
        };
        let range = |t: &str| -> Result<(Vec<i64>, Vec<i64>)> {
            let (a, b) = t.split_once("..").ok_or_else(|| anyhow!("window {t:?} must read LO..HI"))?;
            Ok((ints(a)?, ints(b)?))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["nat"] => Ok(GroupoidSpec::Nat),
            ["interval", w] => match range(w)? {
                (a, b) if a.len() == 1 && b.len() == 1 => Ok(GroupoidSpec::Interval(a[0], b[0])),
                _ => bail!("interval window {w:?} must read A..B"),
            },
            ["box", d, w] => {
                let (lo, hi) = range(w)?;
                Ok(GroupoidSpec::Box { dim: d.parse()?, lo, hi })
            }
            _ => bail!("groupoid must be nat, interval:A..B or box:D:LO..HI, got {s:?}"),
        }
    }
}

impl std::fmt::Display for GroupoidSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self {
            GroupoidSpec::Nat => f.write_str("nat"),
            GroupoidSpec::Interval(a, b) => write!(f, "interval:{a}..{b}"),
            GroupoidSpec::Box { dim, lo, hi } => write!(f, "box:{dim}:{}..{}", join(lo), join(hi)),
        }
    }
}

/// A groupoid built from a [`GroupoidSpec`].
#[derive(Clone, Debug)]
pub enum AnyGroupoid {
    Nat(NatMonoid),
    Interval(IntervalGroupoid),
    Box(BoxGroupoid),
}

impl GroupoidSpec {
    pub fn build(&self) -> Result<AnyGroupoid> {
        Ok(match self {
            GroupoidSpec::Nat => AnyGroupoid::Nat(NatMonoid),
            GroupoidSpec::Interval(a, b) => AnyGroupoid::Interval(make_interval_groupoid(*a, *b)?),
            GroupoidSpec::Box { dim, lo, hi } => AnyGroupoid::Box(make_box_groupoid(*dim, lo.clone(), hi.clone())?),
        })
    }
}

/// A truncated series with square rational matrix coefficients written as
/// `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub groupoid: String,
    pub trunc: usize,
    pub size: usize,
    pub terms: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTerm {
    pub index: String,
    pub coeff: Vec<Vec<String>>,
}

impl SeriesFile {
    pub fn from_series<G: GradedGroupoid>(spec: &GroupoidSpec, s: &FormalSeries<G, Matrix<Rational>>) -> Self {
        let size = s.unit().size();
        let terms = s
            .terms()
            .map(|(i, m)| SeriesTerm {
                index: i.to_string(),
                coeff: m.rows().map(|r| r.iter().map(format_rational).collect()).collect(),
            })
            .collect();
        SeriesFile { groupoid: spec.to_string(), trunc: s.trunc(), size, terms }
    }

    pub fn to_series<G: GradedGroupoid>(&self, groupoid: &G) -> Result<FormalSeries<G, Matrix<Rational>>> {
        let mut terms = Vec::new();
        for t in &self.terms {
            let rows = t
                .coeff
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect::<cosurf_core::Result<Vec<_>>>())
                .collect::<cosurf_core::Result<Vec<_>>>()?;
            let m = Matrix::from_rows(rows)?;
            if m.size() != self.size {
                bail!("coefficient of {} is {}x{}, expected {}", t.index, m.size(), m.size(), self.size);
            }
            terms.push((groupoid.parse_element(&t.index)?, m));
        }
        Ok(FormalSeries::from_terms(groupoid.clone(), self.trunc, &Matrix::identity(self.size), terms)?)
    }
}

/// A unit cell `[base, base + e_a]` for `a` in `axes`, oriented by `sign`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitEntry {
    pub base: Vec<i64>,
    #[serde(default)]
    pub axes: Vec<usize>,
    #[serde(default = "plus")]
    pub sign: i64,
}

fn plus() -> i64 {
    1
}

/// A complex, its domains and optionally a splitting range `[start, end)`.
/// Cells with several parts are composed left to right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub cells: Vec<Vec<UnitEntry>>,
    pub domains: Vec<DomainEntry>,
    #[serde(default)]
    pub split: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEntry {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl ComplexFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn build(&self) -> Result<(Complex, Vec<Block>)> {
        let mut cells = Vec::new();
        for (i, parts) in self.cells.iter().enumerate() {
            let units = parts
                .iter()
                .map(|u| Ok(Surface::unit(CellKey::new(u.base.clone(), &u.axes)?, Sign::from_i64(u.sign)?)))
                .collect::<cosurf_core::Result<Vec<_>>>()?;
            let s = Surface::compose_all(&units).ok_or_else(|| anyhow!("parts of cell {i} do not compose"))?;
            cells.push(s);
        }
        let domains = self.domains.iter().map(|d| Block::new(d.lo.clone(), d.hi.clone())).collect::<cosurf_core::Result<_>>()?;
        Ok((Complex::new(cells)?, domains))
    }

    /// The complex over the bounding box of its domains, as a cobordism.
    pub fn build_cobordism(&self) -> Result<CobordismComplex> {
        let (k, domains) = self.build()?;
        let first = domains.first().ok_or_else(|| anyhow!("no domains"))?;
        let (mut lo, mut hi) = (first.lo.clone(), first.hi.clone());
        for d in &domains {
            for a in 0..lo.len() {
                lo[a] = lo[a].min(d.lo[a]);
                hi[a] = hi[a].max(d.hi[a]);
            }
        }
        let y = CobordismBox::new(Block::new(lo, hi)?)?;
        Ok(CobordismComplex::new(y, k, domains)?)
    }
}
