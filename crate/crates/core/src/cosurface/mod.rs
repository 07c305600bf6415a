//! Lattice hypersurfaces, complexes and cosurfaces.
//!
//! Cells are unit cubes of `ℤ^d` with the cubical orientation convention;
//! composite surfaces are unions of unit cells obtained by gluing. A
//! complex is an ordered list of distinct surfaces, and domains are
//! axis-aligned blocks bounded by its cells.

mod cell;
mod complex;
mod extend;
mod surface;
mod values;

pub use cell::{Block, Cell, CellKey, Part, Sign};
pub use complex::{phi_a, Complex, Phi, Split};
pub use extend::{
    block_partitions, dimension_extend, extend_abelian, extend_nonabelian, unit_cube, Extension, RefinementCheck,
    RefinementOutcome, UnitCube,
};
pub use surface::{GlueMode, Surface};
pub use values::{holonomy_cosurface, Cosurface};
