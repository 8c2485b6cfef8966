//! Finite fields `F_{p^d}` and the polynomial ring `F_q[t]`.

pub mod factor;
pub mod field;
pub mod poly;
pub mod residue;

pub use factor::{irreducibles_up_to, is_irreducible, poly_factor, Factorization};
pub use field::{ff_make, prime_field, FFElem, Field, FieldDesc, Fq};
pub use poly::Poly;
pub use residue::ResidueField;
