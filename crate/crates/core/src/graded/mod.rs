//! Truncated series, integral graded groups and the H1 involution calculus.

mod field;
mod group;
mod h1;
mod poly;

pub use field::{is_prime, FieldSpec};
pub use group::{
    cyclic_group, kunneth_integral, mod_p_betti, prime_power_factors, AbGroup, GradedAb, PrimePower,
};
pub use h1::{coinvariants_h1, InvolutionH1};
pub use poly::PoincarePoly;
