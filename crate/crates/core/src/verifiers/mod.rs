//! Checks of the structural results about `K(X) ∩ K(Y)`: deck groups, Galois
//! coverings, equivariant maps, and the normal forms they force.

mod deck;
mod theorems;

pub use deck::{
    deck_group, equivariance_solve, galois_riemann_hurwitz, is_galois, moebius_left_solve, subgroup_factorization,
    Completeness, DeckGroupResult, EquivarianceWitness, GaloisEvidence, DEFAULT_SAMPLE_BUDGET,
};
pub use theorems::{
    abhyankar_check, so2_verify, theorem1_check, theorem2_recognize, theorem5_obstruction, theorem8_check,
    AbhyankarReport, Check, So2Result, Theorem1Construction, Theorem1Verdict, Theorem2Form, Theorem5Report,
    Theorem8Failure, Theorem8Outcome,
};
