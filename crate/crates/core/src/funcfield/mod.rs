//! Function fields of the projective line and of elliptic curves: elements,
//! places, valuations and divisors.

pub mod curve;
pub mod elem;
pub mod elliptic;
pub mod place;
pub mod ratfunc;
pub mod series;
pub mod valuation;

pub use curve::{Curve, CurveDesc, CurveKind};
pub use elem::FnElem;
pub use elliptic::{elliptic_places_up_to, places_above, EcGroup, EcPoint};
pub use place::{Branch, Place};
pub use ratfunc::RatFunc;
pub use series::elliptic_valuation;
pub use valuation::{divisor_of, os_member, valuation, Divisor};
