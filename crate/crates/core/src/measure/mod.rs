//! Measures on configurations of cosurfaces.

mod cobordism;
mod lattice;
mod markov;
mod mu;
mod reorder;
mod semigroup;
mod series;

pub use cobordism::{
    border_reduce, cut, factorization_check, is_adapted, is_complex_for_cobordism, paste, paste_or_neutral,
    BorderPiece, CobordismBox, CobordismComplex, FactorizationReport, Gluing,
};
pub use lattice::{gibbs_density, higgs_density, plaquette_holonomy, HiggsCoupling, Representation};
pub use markov::{markov_check, CylinderFunction, MarkovCase, MarkovReport};
pub use mu::{for_each_configuration, mu_k, MeasureModel};
pub use reorder::{find_reorder_witness, permutations, reorder_defect, ReorderWitness};
pub use semigroup::{axiom_defects, continuity_profile, heat_semigroup, AxiomDefects, HeatSemigroup, Semigroup};
pub use series::{measure_series, multiplicativity_defect};
pub use crate::cosurface::phi_a;
