//! Integral invariants: first homology with the inversion action, certified
//! torsion summands, low-degree reconstruction and the odd torsion floor.

mod h1;
mod low;
mod witness;

pub use h1::h1_integral;
pub use low::{
    check_low_degree_torsion_free, component_homology_integral, configuration_homology,
    reconstruct_low_degrees, TorsionFloorReport, LOW_DEGREE_LIMIT,
};
pub use witness::{torsion_witnesses, Derivation, Rule, TorsionWitness};
