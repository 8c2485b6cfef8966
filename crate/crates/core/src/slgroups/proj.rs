//! Points of projective space over `k` and the Moebius action.

use std::fmt;

use super::mat::MatK;
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::funcfield::{FnElem, RatFunc};

/// A point `(a_1 : ... : a_n)` stored in normal form.
///
/// On the line the coordinates are cleared of denominators, divided by
/// their gcd and scaled so the first nonzero one is monic. On `E` they are
/// divided by the first nonzero coordinate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FnElem>,
}

impl ProjPoint {
    pub fn new(coords: Vec<FnElem>) -> Result<ProjPoint> {
        let first = coords.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroInput)?;
        let curve = coords[0].curve().clone();
        if curve.is_elliptic() {
            let inv = coords[first].inv().unwrap();
            return Ok(ProjPoint { coords: coords.iter().map(|x| x.mul(&inv)).collect() });
        }
        let base = curve.base();
        let lcm = coords.iter().fold(Poly::one(base), |l, x| {
            let d = x.u().den();
            l.mul(d).div_exact(&l.gcd(d)).unwrap()
        });
        let polys: Vec<Poly> =
            coords.iter().map(|x| x.u().num().mul(&lcm).div_exact(x.u().den()).unwrap()).collect();
        let g = polys.iter().fold(Poly::zero(base), |g, p| g.gcd(p));
        let lead = polys[first].div_exact(&g).unwrap().lead();
        let s = base.inv_raw(lead).unwrap();
        let coords = polys
            .iter()
            .map(|p| FnElem::from_ratfunc(&curve, RatFunc::from_poly(p.div_exact(&g).unwrap().scale(s))))
            .collect();
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[FnElem] {
        &self.coords
    }

    /// `a_i b_j = a_j b_i` for all `i, j`.
    pub fn cross_equal(&self, o: &ProjPoint) -> bool {
        let (a, b) = (&self.coords, &o.coords);
        a.len() == b.len()
            && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `m . p` for `m` acting on column vectors.
pub fn act(m: &MatK, p: &ProjPoint) -> ProjPoint {
    let n = m.n();
    let c = p.coords();
    let curve = m.curve();
    let out = (0..n)
        .map(|i| (0..n).fold(FnElem::zero(curve), |acc, j| acc.add(&m.get(i, j).mul(&c[j]))))
        .collect();
    ProjPoint::new(out).expect("invertible matrix")
}

/// Moebius action of a `2 x 2` matrix on `(a : b)`.
pub fn mobius_action(m: &MatK, a: &FnElem, b: &FnElem) -> Result<ProjPoint> {
    if m.n() != 2 {
        return Err(Error::Invalid("Moebius action needs a 2x2 matrix".into()));
    }
    let p = ProjPoint::new(vec![a.clone(), b.clone()])?;
    Ok(act(m, &p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{CurveDesc, FnElem};
    use crate::slgroups::elementary;

    #[test]
    fn examples() {
        let c = CurveDesc::parse("p1 q=3").unwrap();
        let f = |s: &str| FnElem::parse(&c, s).unwrap();
        let id = MatK::identity(&c, 2);
        let p = mobius_action(&id, &f("t"), &f("1")).unwrap();
        assert_eq!(p.to_string(), "(t:1)");
        let m = MatK::sl(vec![vec![f("0"), f("1")], vec![f("-1"), f("t")]]).unwrap();
        assert_eq!(mobius_action(&m, &f("t"), &f("1")).unwrap().to_string(), "(1:0)");
        let th = elementary(&c, 2, 0, 1, &f("t^2/(t+1)")).unwrap();
        assert_eq!(mobius_action(&th, &f("1"), &f("0")).unwrap(), ProjPoint::new(vec![f("1"), f("0")]).unwrap());
        // scaling the input does not change the point
        let q = mobius_action(&m, &f("2*t/(t+1)"), &f("2/(t+1)")).unwrap();
        assert_eq!(q.to_string(), "(1:0)");
        assert_eq!(mobius_action(&m, &f("0"), &f("0")).unwrap_err(), Error::ZeroInput);
        let n = ProjPoint::new(vec![f("(t+1)/t"), f("2/t^2")]).unwrap();
        assert_eq!(n.to_string(), "(t^2+t:2)");
    }
}
