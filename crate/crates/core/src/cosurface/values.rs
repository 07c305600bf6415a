//! Group-valued cosurfaces on lattice cells.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;

use super::cell::{CellKey, Sign};
use super::surface::Surface;
use crate::algebra::FiniteGroup;
use crate::{Error, Result};

/// Cosurface determined by its values on positively oriented unit cells:
/// `c(s₁ ∗ s₂) = c(s₁) c(s₂)` and `c(s̃) = c(s)⁻¹`.
#[derive(Clone, PartialEq, Debug)]
pub struct Cosurface {
    group: Arc<FiniteGroup>,
    values: BTreeMap<CellKey, usize>,
}

impl Cosurface {
    pub fn new(group: Arc<FiniteGroup>, values: BTreeMap<CellKey, usize>) -> Result<Self> {
        if let Some((k, &g)) = values.iter().find(|(_, &g)| g >= group.order()) {
            return Err(Error::InvalidElement(format!("value {g} on {k}")));
        }
        Ok(Cosurface { group, values })
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        keys: impl IntoIterator<Item = CellKey>,
        f: impl Fn(&CellKey) -> usize,
    ) -> Result<Self> {
        let values = keys.into_iter().map(|k| {
            let g = f(&k);
            (k, g)
        });
        Self::new(group, values.collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &BTreeMap<CellKey, usize> {
        &self.values
    }

    pub fn set(&mut self, key: CellKey, g: usize) -> Result<()> {
        if g >= self.group.order() {
            return Err(Error::InvalidElement(format!("value {g} on {key}")));
        }
        self.values.insert(key, g);
        Ok(())
    }

    pub fn unit_value(&self, key: &CellKey, sign: Sign) -> Result<usize> {
        let g = *self.values.get(key).ok_or_else(|| Error::MissingValue(format!("{key}")))?;
        Ok(match sign {
            Sign::Plus => g,
            Sign::Minus => self.group.inv(g),
        })
    }

    /// Ordered product over the parts of `s` in composition order.
    pub fn value(&self, s: &Surface) -> Result<usize> {
        s.parts().iter().try_fold(self.group.identity(), |acc, (k, sign)| {
            Ok(self.group.mul(acc, self.unit_value(k, *sign)?))
        })
    }

    /// Holonomy cosurface `c(s) = Hol_θ(s̃)` of the edge field `θ`, whose
    /// values are the parallel transports along positively oriented edges.
    pub fn holonomy(field: &Cosurface) -> Cosurface {
        let group = field.group.clone();
        let values = field.values.iter().map(|(k, &g)| (k.clone(), group.inv(g))).collect();
        Cosurface { group, values }
    }
}

/// Value of the holonomy cosurface of `field` on a path: the ordered product
/// of the transports along the reversed path.
pub fn holonomy_cosurface(field: &Cosurface, path: &Surface) -> Result<usize> {
    if path.dim() != 1 {
        return Err(Error::InvalidDimension(format!("holonomy of a {}-cell", path.dim())));
    }
    Cosurface::holonomy(field).value(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn edge(x: i64, sign: Sign) -> Surface {
        Surface::unit(CellKey::new(vec![x], &[0]).unwrap(), sign)
    }

    #[test]
    fn holonomy_laws() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let (g, h) = (1, 3);
        let mut values = BTreeMap::new();
        values.insert(CellKey::new(vec![0], &[0]).unwrap(), s3.inv(h));
        values.insert(CellKey::new(vec![1], &[0]).unwrap(), s3.inv(g));
        let field = Cosurface::new(s3.clone(), values).unwrap();
        let path = edge(1, Sign::Plus).star(&edge(0, Sign::Plus)).unwrap();
        // reversed traversal meets edge 1 first with transport g, then edge 0 with h
        assert_eq!(holonomy_cosurface(&field, &path).unwrap(), s3.mul(g, h));
        assert_eq!(holonomy_cosurface(&field, &path.reverse()).unwrap(), s3.inv(s3.mul(g, h)));
        let trivial = Cosurface::from_fn(s3.clone(), field.values().keys().cloned(), |_| 0).unwrap();
        assert_eq!(holonomy_cosurface(&trivial, &path).unwrap(), 0);
        let missing = edge(7, Sign::Plus);
        assert!(matches!(field.value(&missing), Err(Error::MissingValue(_))));
    }
}
