//! Exact arithmetic for cusps and unipotent subgroups of `SL_n` over
//! function fields of curves over finite fields.

pub mod congruence;
pub mod cusps;
pub mod error;
pub mod ff;
pub mod funcfield;
pub mod picard;
pub mod slgroups;
pub mod text;

pub use error::{Error, Result};
