//! `SL_n` over `k` and over `O_S`.

pub mod mat;
pub mod proj;
pub mod sample;

pub use mat::{borel_factor, elementary, in_sl_os, BorelParts, MatK};
pub use proj::{mobius_action, ProjPoint};
pub use sample::{sample_gamma, Sampler, SamplerCfg};
