//! Cusp stabilizers, their unipotent radicals, and Euclidean reduction.

use std::collections::BTreeSet;

use super::invariant::Chamber;
use crate::congruence::gamma_i_member;
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::funcfield::{Curve, FnElem, Place, RatFunc};
use crate::slgroups::{borel_factor, in_sl_os, mobius_action, BorelParts, MatK, ProjPoint};

/// The arithmetic group `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GSpec {
    SlOs,
    /// Principal congruence subgroup of level `(f)`.
    GammaI(Poly),
}

pub fn in_group(m: &MatK, s: &BTreeSet<Place>, g: &GSpec) -> Result<bool> {
    match g {
        GSpec::SlOs => Ok(in_sl_os(m, s)),
        GSpec::GammaI(f) => gamma_i_member(m, s, f),
    }
}

/// `g m g^-1` for the chamber's `g`.
fn conjugate(m: &MatK, ch: &Chamber) -> MatK {
    ch.g.mul(m).mul(&ch.g.inv().expect("invertible chamber"))
}

/// `Some(parts)` iff `m` lies in `G` and fixes the chamber, the parts being
/// those of `g m g^-1`.
pub fn stabilizer_member(m: &MatK, ch: &Chamber, s: &BTreeSet<Place>, g: &GSpec) -> Result<Option<BorelParts>> {
    if !in_group(m, s, g)? {
        return Ok(None);
    }
    match borel_factor(&conjugate(m, ch)) {
        Ok(parts) => Ok(Some(parts)),
        Err(Error::NotUpperTriangular) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Membership in the maximal unipotent subgroup `g^-1 U^+(k) g ∩ G`.
pub fn max_unipotent_member(m: &MatK, ch: &Chamber, s: &BTreeSet<Place>, g: &GSpec) -> Result<bool> {
    if !in_group(m, s, g)? {
        return Ok(false);
    }
    let c = conjugate(m, ch);
    Ok(c.is_upper_triangular() && (0..c.n()).all(|i| c.get(i, i).is_one()))
}

/// For `O_S = F_q[t]`: `gamma` in `SL_2(F_q[t])` with `gamma . (a:b) = (1:0)`,
/// from a Bezout relation `s a + r b = 1` of the normalized coordinates.
pub fn reduce_to_standard(a: &FnElem, b: &FnElem, s: &BTreeSet<Place>) -> Result<MatK> {
    let curve: &Curve = a.curve();
    if curve.is_elliptic() || s.len() != 1 || !s.contains(&Place::Infinity) {
        return Err(Error::Unsupported("Euclidean reduction needs the line with S = {inf}".into()));
    }
    let p = ProjPoint::new(vec![a.clone(), b.clone()])?;
    let (pa, pb) = (p.coords()[0].u().num().clone(), p.coords()[1].u().num().clone());
    let (g, x, y) = pa.ext_gcd(&pb);
    debug_assert!(g.is_one());
    let e = |q: Poly| FnElem::from_ratfunc(curve, RatFunc::from_poly(q));
    let gamma = MatK::sl(vec![vec![e(x), e(y)], vec![e(pb.neg()), e(pa)]])?;
    let img = mobius_action(&gamma, a, b)?;
    if img != ProjPoint::new(vec![FnElem::one(curve), FnElem::zero(curve)])? {
        return Err(Error::InvariantViolation(format!("reduction sent {p} to {img}")));
    }
    Ok(gamma)
}
