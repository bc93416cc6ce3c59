//! Chain-level ground truth for small instances.
//!
//! Finite integral chain complexes, Smith normal form homology, cell models
//! with cellular actions, cyclic quotients by the two-term resolution and the
//! free antipodal model for unordered pairs.

mod braid;
mod cells;
mod complex;
mod lower;
mod quotient;
mod snf;

pub use braid::braid_group_complex;
pub use cells::{CellModel, SignedMap};
pub use complex::{homology_znf, FinChainComplex, SparseCols};
pub use lower::{lower_model, model_cell_count, oracle_homology};
pub use quotient::{
    cyclic_action, cyclic_quotient_complex, e2_complex, e2_model, mapping_torus, twisted_power,
    BasisOrbit, CyclicAction, OrbitKind, Twist,
};
pub use snf::elementary_divisors;

/// Largest complex the oracle builds unless told otherwise.
pub const DEFAULT_CELL_BUDGET: usize = 2000;
