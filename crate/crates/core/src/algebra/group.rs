use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A finite group given by its Cayley table. Elements are the indices
/// `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    abelian: bool,
}

impl FiniteGroup {
    /// Validates `table` (row-major, `table[a * n + b] = a·b`) as a group law
    /// with identity `0`. When `inverses` is given it must agree with the law.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<usize>,
        inverses: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.len() != n * n {
            return bad(format!("table has {} entries, expected {}", table.len(), n * n));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= n) {
            return bad(format!("table entry {x} out of range"));
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return bad("element 0 is not the identity".into());
            }
        }
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[table[a * n + b]] = true;
                seen_col[table[b * n + a]] = true;
            }
            if seen_row.iter().chain(&seen_col).any(|s| !s) {
                return bad(format!("row or column {a} is not a permutation"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return bad(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let computed: Vec<usize> =
            (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap()).collect();
        if let Some(given) = inverses {
            if given != computed {
                return bad("inverse table inconsistent with the group law".into());
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..n {
                let y = table[table[g * n + x] * n + computed[g]];
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| table[a * n + b] == table[b * n + a]));
        Ok(FiniteGroup { name: name.into(), labels, table, inverses: computed, class_of, classes, abelian })
    }

    /// The cyclic group ℤₙ.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z_0".into()));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(format!("Z{n}"), labels, table, None)
    }

    /// The symmetric group on three letters; elements are permutations in
    /// one-line notation, listed lexicographically, composed as `(pq)(i) = p(q(i))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for p in &perms {
            for q in &perms {
                table.push(index([p[q[0]], p[q[1]], p[q[2]]]));
            }
        }
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Self::from_table("S3", labels, table, None).expect("S3 table is a group")
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Self {
        // Element 2u + s is (-1)^s times unit u, units ordered 1, i, j, k.
        let unit_mul = |u: usize, v: usize| -> (usize, usize) {
            match (u, v) {
                (0, v) => (v, 0),
                (u, 0) => (u, 0),
                (u, v) if u == v => (0, 1),
                (1, 2) => (3, 0),
                (2, 1) => (3, 1),
                (2, 3) => (1, 0),
                (3, 2) => (1, 1),
                (3, 1) => (2, 0),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let mut table = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (w, s) = unit_mul(a / 2, b / 2);
                table.push(2 * w + (s + a % 2 + b % 2) % 2);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::from_table("Q8", labels, table, None).expect("Q8 table is a group")
    }

    /// Built-in groups: `Z2`..`Z12`, `S3`, `Q8`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "S3" => Ok(Self::symmetric3()),
            "Q8" => Ok(Self::quaternion8()),
            _ => {
                let n: usize = name
                    .strip_prefix('Z')
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown group {name:?}")))?;
                if !(2..=12).contains(&n) {
                    return Err(Error::InvalidGroup(format!("built-in cyclic groups are Z2..Z12, got {name}")));
                }
                Self::cyclic(n)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Ordered product of a sequence of elements.
    pub fn product(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|g| self.mul(g, z) == self.mul(z, g))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.is_central(z)).collect()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// Non-identity elements; conjugation closed and symmetric.
    pub fn non_identity(&self) -> Vec<usize> {
        (1..self.order()).collect()
    }

    /// Elements of order two generating `S3`, or all non-identity elements
    /// otherwise. This is the default heat-kernel generator set.
    pub fn default_generators(&self) -> Vec<usize> {
        if self.name == "S3" {
            self.elements().filter(|&x| x != 0 && self.mul(x, x) == 0).collect()
        } else {
            self.non_identity()
        }
    }

    /// Whether `set` generates the whole group.
    pub fn generates(&self, set: &[usize]) -> bool {
        let mut reached = vec![false; self.order()];
        reached[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in set {
                let y = self.mul(x, s);
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
        reached.iter().all(|&r| r)
    }
}
