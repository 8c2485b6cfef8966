//! Points, the group law and closed points of a short Weierstrass curve.

use std::collections::BTreeSet;

use super::curve::Curve;
use super::place::{Branch, Place};
use crate::error::{Error, Result};
use crate::ff::{is_irreducible, irreducibles_up_to, Field, FieldDesc, Fq, Poly, ResidueField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EcPoint<E> {
    Infinity,
    Affine(E, E),
}

/// The curve `y^2 = x^3 + a x + b` over some field.
pub struct EcGroup<'a, F: Field> {
    pub field: &'a F,
    a: F::Elem,
    b: F::Elem,
}

impl<'a, F: Field> EcGroup<'a, F> {
    pub fn new(field: &'a F, a: F::Elem, b: F::Elem) -> Self {
        EcGroup { field, a, b }
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        let x2 = f.mul(x, x);
        let t = f.add(&f.mul(&x2, x), &f.mul(&self.a, x));
        f.add(&t, &self.b)
    }

    pub fn contains(&self, pt: &EcPoint<F::Elem>) -> bool {
        match pt {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        match pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), self.field.neg(y)),
        }
    }

    pub fn add(&self, p: &EcPoint<F::Elem>, q: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return EcPoint::Infinity;
            }
            // (3x^2 + a) / 2y
            let num = f.add(&f.mul(&f.from_int(3), &f.mul(x1, x1)), &self.a);
            let den = f.mul(&f.from_int(2), y1);
            f.mul(&num, &f.inv(&den).unwrap())
        } else {
            let num = f.sub(y2, y1);
            let den = f.sub(x2, x1);
            f.mul(&num, &f.inv(&den).unwrap())
        };
        let x3 = f.sub(&f.sub(&f.mul(&slope, &slope), x1), x2);
        let y3 = f.sub(&f.mul(&slope, &f.sub(x1, &x3)), y1);
        EcPoint::Affine(x3, y3)
    }

    pub fn mul(&self, pt: &EcPoint<F::Elem>, k: u64) -> EcPoint<F::Elem> {
        let mut acc = EcPoint::Infinity;
        let mut base = pt.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Group over a table field, with `(a, b)` taken from the curve.
pub fn group_over<'a>(curve: &Curve, field: &'a FieldDesc) -> EcGroup<'a, FieldDesc> {
    let (a, b) = curve.ab().expect("elliptic curve");
    EcGroup::new(field, a, b)
}

/// All points of `E(F_{p^m})`, with `F_{p^m}` the standard extension.
pub fn points_over(curve: &Curve, field: &FieldDesc) -> Vec<EcPoint<u32>> {
    let g = group_over(curve, field);
    let mut roots: Vec<Vec<u32>> = vec![Vec::new(); field.size() as usize];
    for y in field.elements() {
        roots[field.mul_raw(y, y) as usize].push(y);
    }
    let mut out = vec![EcPoint::Infinity];
    for x in field.elements() {
        for &y in &roots[g.rhs(&x) as usize] {
            out.push(EcPoint::Affine(x, y));
        }
    }
    out
}

fn frobenius_pt(field: &FieldDesc, pt: &EcPoint<u32>) -> EcPoint<u32> {
    let p = field.characteristic() as u64;
    match pt {
        EcPoint::Infinity => EcPoint::Infinity,
        EcPoint::Affine(x, y) => EcPoint::Affine(field.pow_raw(*x, p), field.pow_raw(*y, p)),
    }
}

/// Frobenius orbit of a point, starting at the point.
pub fn frobenius_orbit(field: &FieldDesc, pt: &EcPoint<u32>) -> Vec<EcPoint<u32>> {
    let mut orbit = vec![pt.clone()];
    loop {
        let next = frobenius_pt(field, orbit.last().unwrap());
        if &next == pt {
            return orbit;
        }
        orbit.push(next);
    }
}

/// Minimal polynomial over `F_p` of an element of a standard extension.
pub fn minimal_polynomial(field: &FieldDesc, prime: &Fq, a: u32) -> Poly {
    let p = field.characteristic() as u64;
    let mut conj = vec![a];
    loop {
        let next = field.pow_raw(*conj.last().unwrap(), p);
        if next == a {
            break;
        }
        conj.push(next);
    }
    // prod (X - c) over the extension, coefficients land in F_p
    let mut coeffs = vec![1u32];
    for &c in &conj {
        let mut next = vec![0u32; coeffs.len() + 1];
        for (i, &k) in coeffs.iter().enumerate() {
            next[i + 1] = field.add_raw(next[i + 1], k);
            next[i] = field.sub_raw(next[i], field.mul_raw(k, c));
        }
        coeffs = next;
    }
    debug_assert!(coeffs.iter().all(|&c| field.is_prime_subfield(c)));
    Poly::new(prime, coeffs)
}

/// Converts a point orbit of exact size `m` to its place.
pub fn place_of_point(curve: &Curve, field: &FieldDesc, pt: &EcPoint<u32>) -> Place {
    let (x0, y0) = match pt {
        EcPoint::Infinity => return Place::Infinity,
        EcPoint::Affine(x, y) => (*x, *y),
    };
    let prime = curve.base();
    let h = minimal_polynomial(field, prime, x0);
    let e = h.degree().unwrap();
    let size = frobenius_orbit(field, pt).len();
    let branch = if y0 == 0 {
        Branch::Ramified
    } else if size == e {
        // y0 = r(x0) for a unique r of degree < e
        let r = (0..(prime.size() as u128).pow(e as u32))
            .map(|n| Poly::from_index(prime, n))
            .find(|r| eval_embedded(field, r, x0) == y0)
            .expect("y-coordinate lies in F_p(x0)");
        Branch::Split(r)
    } else {
        Branch::Inert
    };
    Place::Point { h, branch }
}

/// Evaluates an `F_p`-polynomial at an element of a standard extension.
pub fn eval_embedded(field: &FieldDesc, f: &Poly, a: u32) -> u32 {
    f.coeffs().iter().rev().fold(0, |acc, &c| field.add_raw(field.mul_raw(acc, a), c))
}

/// `O` plus every closed point of degree `<= max_deg`, by grouping the
/// points of `E(F_{p^m})` into Frobenius orbits.
pub fn elliptic_places_up_to(curve: &Curve, max_deg: usize) -> Result<Vec<Place>> {
    let p = ensure_elliptic(curve)?;
    if max_deg > 3 {
        return Err(Error::Invalid("elliptic place enumeration is limited to degree 3".into()));
    }
    let mut out: BTreeSet<Place> = BTreeSet::new();
    out.insert(Place::Infinity);
    for m in 1..=max_deg {
        let field = FieldDesc::build(p, m as u32)?;
        for pt in points_over(curve, &field) {
            if pt != EcPoint::Infinity && frobenius_orbit(&field, &pt).len() == m {
                out.insert(place_of_point(curve, &field, &pt));
            }
        }
    }
    let mut v: Vec<Place> = out.into_iter().collect();
    v.sort_by_key(|pl| pl.degree());
    Ok(v)
}

fn ensure_elliptic(curve: &Curve) -> Result<u64> {
    if !curve.is_elliptic() {
        return Err(Error::Unsupported("elliptic curve required".into()));
    }
    Ok(curve.base().characteristic() as u64)
}

/// The places of `E` above the place `h` of the `x`-line.
pub fn places_above(curve: &Curve, h: &Poly) -> Vec<Place> {
    debug_assert!(is_irreducible(h) && h.is_monic());
    let k = ResidueField::new(h);
    let c = curve.rhs().unwrap().compose(&k.gen(), Some(h));
    if c.is_zero() {
        return vec![Place::Point { h: h.clone(), branch: Branch::Ramified }];
    }
    match k.sqrt(&c) {
        Some(r) => {
            let mut v = vec![
                Place::Point { h: h.clone(), branch: Branch::Split(r.clone()) },
                Place::Point { h: h.clone(), branch: Branch::Split(r.neg()) },
            ];
            v.sort();
            v
        }
        None => vec![Place::Point { h: h.clone(), branch: Branch::Inert }],
    }
}

/// Places of degree `<= max_deg` from the irreducibles of the `x`-line;
/// an independent route to [`elliptic_places_up_to`].
pub fn places_by_fibres(curve: &Curve, max_deg: usize) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    for h in irreducibles_up_to(curve.base(), max_deg) {
        out.extend(places_above(curve, &h).into_iter().filter(|pl| pl.degree() <= max_deg));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// Sum over the Frobenius orbit of a place, as a point of `E(F_p)`. This is
/// the image of `P - deg(P) O` in `Pic^0(E) = E(F_p)`.
pub fn orbit_sum(curve: &Curve, place: &Place) -> Result<EcPoint<u32>> {
    let (h, y) = match place {
        Place::Infinity => return Ok(EcPoint::Infinity),
        Place::Point { branch: Branch::Inert, .. } => return Ok(EcPoint::Infinity),
        Place::Point { h, branch: Branch::Ramified } => (h, Poly::zero(curve.base())),
        Place::Point { h, branch: Branch::Split(r) } => (h, r.clone()),
        Place::Finite(_) => return Err(Error::Invalid("line place on an elliptic curve".into())),
    };
    let k = ResidueField::new(h);
    let (a, b) = curve.ab().unwrap();
    let group = EcGroup::new(&k, k.embed(a), k.embed(b));
    let mut x = k.gen();
    let mut yv = y.rem(h);
    let mut sum = EcPoint::Infinity;
    for _ in 0..h.degree().unwrap() {
        let pt = EcPoint::Affine(x.clone(), yv.clone());
        debug_assert!(group.contains(&pt));
        sum = group.add(&sum, &pt);
        x = k.frobenius(&x);
        yv = k.frobenius(&yv);
    }
    match sum {
        EcPoint::Infinity => Ok(EcPoint::Infinity),
        EcPoint::Affine(sx, sy) if sx.is_constant() && sy.is_constant() => {
            Ok(EcPoint::Affine(sx.coeff(0), sy.coeff(0)))
        }
        _ => Err(Error::InvariantViolation("orbit sum is not Frobenius-stable".into())),
    }
}

/// Canonical representative of a place: the smallest `(x, y)` of its orbit
/// in the standard field `F_{p^m}`, `m = deg P`.
pub fn representative_point(curve: &Curve, place: &Place) -> Result<(Fq, EcPoint<u32>)> {
    let p = ensure_elliptic(curve)?;
    let m = place.degree();
    let field = FieldDesc::build(p, m as u32)?;
    let (h, branch) = match place {
        Place::Infinity => return Ok((field, EcPoint::Infinity)),
        Place::Point { h, branch } => (h, branch),
        Place::Finite(_) => return Err(Error::Invalid("line place on an elliptic curve".into())),
    };
    let group = group_over(curve, &field);
    let mut best: Option<(u32, u32)> = None;
    for x0 in field.elements() {
        if eval_embedded(&field, h, x0) != 0 {
            continue;
        }
        let c = group.rhs(&x0);
        let ys: Vec<u32> = match branch {
            Branch::Ramified => vec![0],
            Branch::Split(r) => vec![eval_embedded(&field, r, x0)],
            Branch::Inert => field.elements().filter(|&y| field.mul_raw(y, y) == c).collect(),
        };
        for y0 in ys {
            if field.mul_raw(y0, y0) == c && best.is_none_or(|b| (x0, y0) < b) {
                best = Some((x0, y0));
            }
        }
    }
    let (x0, y0) = best.ok_or_else(|| Error::Invalid("place has no points".into()))?;
    Ok((field, EcPoint::Affine(x0, y0)))
}
