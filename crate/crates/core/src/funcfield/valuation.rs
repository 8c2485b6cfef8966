//! Valuations, principal divisors and `O_S` membership.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::curve::Curve;
use super::elem::FnElem;
use super::elliptic::places_above;
use super::place::{Branch, Place};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::ff::{poly_factor, Poly};

/// `nu_P(x)` in closed form.
///
/// On `E`, `x - x0` has order 2 at a ramified place and `y` order 1, which
/// forces different parities; at `O` the orders of `x` and `y` are -2, -3.
/// At a split place `y = r mod h`, after removing the common power of `h`
/// the remaining order equals the `h`-adic order of the norm, because the
/// conjugate place sees a unit.
pub fn valuation(x: &FnElem, place: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let curve = x.curve();
    let (u, v) = (x.u(), x.v());
    if !curve.is_elliptic() {
        return match place {
            Place::Infinity => Ok(u.val_at_infinity()),
            Place::Finite(h) => Ok(u.val_at(h)),
            Place::Point { .. } => Err(Error::Invalid("elliptic place on the projective line".into())),
        };
    }
    let terms = |fu: &dyn Fn(&RatFunc) -> i64, fv: &dyn Fn(&RatFunc) -> i64| -> i64 {
        let a = (!u.is_zero()).then(|| fu(u));
        let b = (!v.is_zero()).then(|| fv(v));
        a.into_iter().chain(b).min().unwrap()
    };
    match place {
        Place::Finite(_) => Err(Error::Invalid("line place on an elliptic curve".into())),
        Place::Infinity => Ok(terms(&|r| 2 * r.val_at_infinity(), &|r| 2 * r.val_at_infinity() - 3)),
        Place::Point { h, branch: Branch::Ramified } => Ok(terms(&|r| 2 * r.val_at(h), &|r| 2 * r.val_at(h) + 1)),
        Place::Point { h, branch: Branch::Inert } => Ok(terms(&|r| r.val_at(h), &|r| r.val_at(h))),
        Place::Point { h, branch: Branch::Split(r) } => {
            let e = terms(&|s| s.val_at(h), &|s| s.val_at(h));
            let he = RatFunc::from_poly(h.clone()).pow(-e);
            let (u1, v1) = (u.mul(&he), v.mul(&he));
            let resid = u1.reduce_mod(h).unwrap().add(&v1.reduce_mod(h).unwrap().mul_mod(r, h)).rem(h);
            if !resid.is_zero() {
                return Ok(e);
            }
            let unit = FnElem::new(curve, u1, v1);
            Ok(e + unit.norm().val_at(h))
        }
    }
}

/// A finitely supported integer combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, k) in terms {
            d.add_term(p, k);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, k: i64) {
        let e = self.0.entry(p.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&p);
        }
    }

    pub fn get(&self, p: &Place) -> i64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.0.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, &k) in &o.0 {
            d.add_term(p.clone(), k);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor(self.0.iter().map(|(p, &k)| (p.clone(), -k)).collect())
    }

    /// `1*(t^2+t+1) - 1*(t) - 1*(inf)`; zero prints as `0`.
    pub fn render(&self, curve: &Curve) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Place, &i64)> = self.0.iter().collect();
        // finite places by degree, infinity last
        terms.sort_by_key(|(p, _)| (p.is_infinity(), std::cmp::Reverse(p.degree()), (*p).clone()));
        let mut out = String::new();
        for (i, (p, &k)) in terms.iter().enumerate() {
            let sign = if k < 0 { "-" } else { "+" };
            if i == 0 {
                if k < 0 {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let _ = write!(out, "{}*({})", k.abs(), p.render(curve));
        }
        out
    }
}

fn factor_support(p: &Poly, into: &mut BTreeSet<Poly>) -> Result<()> {
    if p.is_constant() {
        return Ok(());
    }
    for (h, _) in poly_factor(p)?.factors {
        into.insert(h);
    }
    Ok(())
}

/// `div(x)`, with the degree-zero law checked on every call.
pub fn divisor_of(x: &FnElem) -> Result<Divisor> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let curve = x.curve();
    let mut under = BTreeSet::new();
    factor_support(x.u().den(), &mut under)?;
    if curve.is_elliptic() {
        factor_support(x.v().den(), &mut under)?;
        factor_support(x.norm().num(), &mut under)?;
    } else {
        factor_support(x.u().num(), &mut under)?;
    }
    let mut places = vec![Place::Infinity];
    for h in under {
        if curve.is_elliptic() {
            places.extend(places_above(curve, &h));
        } else {
            places.push(Place::Finite(h));
        }
    }
    let mut d = Divisor::zero();
    for p in places {
        let k = valuation(x, &p)?;
        d.add_term(p, k);
    }
    if d.degree() != 0 {
        return Err(Error::InvariantViolation(format!("principal divisor of degree {}", d.degree())));
    }
    Ok(d)
}

/// Removes from `d` every irreducible factor it shares with `m`.
fn strip(d: &Poly, m: &Poly) -> Poly {
    let mut d = d.clone();
    loop {
        let g = d.gcd(m);
        if g.is_one() {
            return d;
        }
        d = d.div_exact(&g).unwrap();
    }
}

/// Whether `x` is regular at every place outside `s`.
pub fn os_member(x: &FnElem, s: &BTreeSet<Place>) -> bool {
    if x.is_zero() {
        return true;
    }
    let curve = x.curve();
    let base = curve.base();
    if !s.contains(&Place::Infinity) && valuation(x, &Place::Infinity).unwrap() < 0 {
        return false;
    }
    let den = x.u().den().mul(x.v().den());
    if !curve.is_elliptic() {
        let m = s.iter().filter_map(Place::under).fold(Poly::one(base), |a, h| a.mul(h));
        return strip(&den, &m).is_one();
    }
    // fibres entirely inside S may carry any pole; split fibres with one
    // place in S are checked at the other place
    let mut full = Poly::one(base);
    let mut partial = Vec::new();
    let unders: BTreeSet<&Poly> = s.iter().filter_map(Place::under).collect();
    for h in unders {
        let above = places_above(curve, h);
        match above.iter().filter(|p| !s.contains(p)).cloned().collect::<Vec<_>>() {
            outside if outside.is_empty() => full = full.mul(h),
            outside => partial.push((h.clone(), outside)),
        }
    }
    let rest = strip(&den, &full);
    let mut pm = Poly::one(base);
    for (h, _) in &partial {
        pm = pm.mul(h);
    }
    if !strip(&rest, &pm).is_one() {
        return false;
    }
    partial
        .iter()
        .filter(|(h, _)| h.divides(&rest))
        .all(|(_, outside)| outside.iter().all(|p| valuation(x, p).unwrap() >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::curve::CurveDesc;
    use crate::funcfield::elliptic::elliptic_places_up_to;
    use crate::funcfield::series::elliptic_valuation;

    fn p1(q: &str) -> Curve {
        CurveDesc::parse(&format!("p1 q={q}")).unwrap()
    }

    #[test]
    fn line_examples() {
        let c = p1("2");
        let t = FnElem::var(&c);
        assert_eq!(valuation(&t, &Place::Infinity).unwrap(), -1);
        let f = FnElem::parse(&c, "t^2/(t+1)").unwrap();
        assert_eq!(valuation(&f, &Place::parse(&c, "t").unwrap()).unwrap(), 2);
        assert_eq!(valuation(&FnElem::zero(&c), &Place::Infinity).unwrap_err(), Error::ZeroInput);
        assert_eq!(divisor_of(&t).unwrap().render(&c), "1*(t) - 1*(inf)");
        let g = FnElem::parse(&c, "(t^2+t+1)/t").unwrap();
        assert_eq!(divisor_of(&g).unwrap().render(&c), "1*(t^2+t+1) - 1*(t) - 1*(inf)");
        assert!(divisor_of(&FnElem::one(&c)).unwrap().is_zero());
    }

    #[test]
    fn membership_examples() {
        let c = p1("2");
        let inf: BTreeSet<Place> = [Place::Infinity].into();
        assert!(os_member(&FnElem::parse(&c, "t^2").unwrap(), &inf));
        assert!(!os_member(&FnElem::parse(&c, "1/t").unwrap(), &inf));
        let s: BTreeSet<Place> = [Place::parse(&c, "t^2+t+1").unwrap()].into();
        assert!(os_member(&FnElem::parse(&c, "t/(t^2+t+1)").unwrap(), &s));
        assert!(!os_member(&FnElem::parse(&c, "t").unwrap(), &s));
        assert!(os_member(&FnElem::zero(&c), &s));
    }

    #[test]
    fn elliptic_closed_form_matches_series() {
        let c = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let places = elliptic_places_up_to(&c, 2).unwrap();
        for src in ["x", "y", "x-2+y", "(y-1)/x", "(x^2+3*y)/(x+4)", "y*(x+1)^2-x^3-1", "1/(y+2)"] {
            let f = FnElem::parse(&c, src).unwrap();
            let d = divisor_of(&f).unwrap();
            for p in &places {
                assert_eq!(valuation(&f, p).unwrap(), elliptic_valuation(&f, p).unwrap(), "{src} at {}", p.render(&c));
                assert_eq!(d.get(p), valuation(&f, p).unwrap());
            }
        }
    }

    #[test]
    fn elliptic_membership() {
        let c = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let o: BTreeSet<Place> = [Place::Infinity].into();
        assert!(os_member(&FnElem::parse(&c, "x^2+y").unwrap(), &o));
        assert!(!os_member(&FnElem::parse(&c, "1/x").unwrap(), &o));
        // 1/(y-1) = (y+1)/(x^3+x) has poles at the points with y = 1 only
        let f = FnElem::parse(&c, "1/(y-1)").unwrap();
        let pt = |s: &str| Place::parse(&c, s).unwrap();
        let with = |ps: &[&str]| -> BTreeSet<Place> { ps.iter().map(|s| pt(s)).chain([Place::Infinity]).collect() };
        assert!(os_member(&f, &with(&["pt(0,1)@1", "pt(2,1)@1", "pt(3,1)@1"])));
        assert!(!os_member(&f, &with(&["pt(0,4)@1", "pt(2,1)@1", "pt(3,1)@1"])));
        assert!(!os_member(&f, &with(&["pt(0,1)@1", "pt(2,1)@1"])));
    }
}
