//! Abelian groups in Smith form, Picard groups and S-units.

pub mod group;
pub mod pic;
pub mod snf;
pub mod units;

pub use group::{FinAbGroup, GrpElem, Presentation};
pub use pic::{gcd_oracle, pic_curve, pic_os, PicCurve, PicOS};
pub use snf::{hnf, left_kernel, snf, Mat, Smith};
pub use units::{unit_lattice, UnitLattice};
