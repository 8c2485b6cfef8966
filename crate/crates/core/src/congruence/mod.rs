//! Principal congruence subgroups over `F_q[t]`, finite quotient rings and
//! their flag cosets.

pub mod flags;
pub mod gamma;
pub mod quot;

pub use flags::{
    borel, congruence_cusp_count, enumerate_sl, flag_coset_count, gaussian_flag_count, lift_to_sl,
    unimodular_pair_count, within_budget,
};
pub use gamma::{
    charpoly, charpoly_reduction_check, gamma_i_member, laurent_counterexample_check, stabilizer_structure,
    GammaSampler, StabStructure,
};
pub use quot::{QuotRing, RingMat, MAX_RING};
