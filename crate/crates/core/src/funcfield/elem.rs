//! Elements of the function field `k` of a curve.
//!
//! On the line an element is a rational function in `t`. On `E` it is
//! `u(x) + v(x) y` with `y^2` eagerly rewritten as `x^3 + a x + b`, which
//! makes the representation canonical.

use std::fmt;

use super::curve::Curve;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::text::{self, Algebra};

#[derive(Clone)]
pub struct FnElem {
    curve: Curve,
    u: RatFunc,
    v: RatFunc,
}

impl PartialEq for FnElem {
    fn eq(&self, o: &Self) -> bool {
        self.u == o.u && self.v == o.v
    }
}
impl Eq for FnElem {}

impl std::hash::Hash for FnElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.u.hash(state);
        self.v.hash(state);
    }
}

impl FnElem {
    pub fn new(curve: &Curve, u: RatFunc, v: RatFunc) -> Self {
        assert!(curve.is_elliptic() || v.is_zero(), "y-part on the projective line");
        FnElem { curve: curve.clone(), u, v }
    }

    pub fn from_ratfunc(curve: &Curve, u: RatFunc) -> Self {
        let z = RatFunc::zero(curve.base());
        FnElem::new(curve, u, z)
    }

    pub fn from_poly(curve: &Curve, p: Poly) -> Self {
        FnElem::from_ratfunc(curve, RatFunc::from_poly(p))
    }

    pub fn zero(curve: &Curve) -> Self {
        FnElem::from_ratfunc(curve, RatFunc::zero(curve.base()))
    }

    pub fn one(curve: &Curve) -> Self {
        FnElem::constant(curve, 1)
    }

    pub fn constant(curve: &Curve, c: u32) -> Self {
        FnElem::from_ratfunc(curve, RatFunc::constant(curve.base(), c))
    }

    /// The coordinate `t` (line) or `x` (elliptic).
    pub fn var(curve: &Curve) -> Self {
        FnElem::from_poly(curve, Poly::var(curve.base()))
    }

    /// The coordinate `y`; `None` on the line.
    pub fn y(curve: &Curve) -> Option<Self> {
        curve
            .is_elliptic()
            .then(|| FnElem::new(curve, RatFunc::zero(curve.base()), RatFunc::one(curve.base())))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn u(&self) -> &RatFunc {
        &self.u
    }

    pub fn v(&self) -> &RatFunc {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    /// Nonzero element of `F_q`.
    pub fn as_constant(&self) -> Option<u32> {
        (self.v.is_zero() && self.u.is_constant()).then(|| self.u.num().coeff(0))
    }

    pub fn add(&self, o: &FnElem) -> FnElem {
        FnElem { curve: self.curve.clone(), u: self.u.add(&o.u), v: self.v.add(&o.v) }
    }

    pub fn sub(&self, o: &FnElem) -> FnElem {
        FnElem { curve: self.curve.clone(), u: self.u.sub(&o.u), v: self.v.sub(&o.v) }
    }

    pub fn neg(&self) -> FnElem {
        FnElem { curve: self.curve.clone(), u: self.u.neg(), v: self.v.neg() }
    }

    pub fn mul(&self, o: &FnElem) -> FnElem {
        if self.v.is_zero() && o.v.is_zero() {
            return FnElem { curve: self.curve.clone(), u: self.u.mul(&o.u), v: self.v.clone() };
        }
        let c = RatFunc::from_poly(self.curve.rhs().unwrap());
        let u = self.u.mul(&o.u).add(&self.v.mul(&o.v).mul(&c));
        let v = self.u.mul(&o.v).add(&self.v.mul(&o.u));
        FnElem { curve: self.curve.clone(), u, v }
    }

    pub fn scale(&self, c: u32) -> FnElem {
        FnElem { curve: self.curve.clone(), u: self.u.scale(c), v: self.v.scale(c) }
    }

    /// `u - v y`.
    pub fn conj(&self) -> FnElem {
        FnElem { curve: self.curve.clone(), u: self.u.clone(), v: self.v.neg() }
    }

    /// Norm down to `F_q(x)`: `u^2 - v^2 (x^3 + a x + b)`; identity on the line.
    pub fn norm(&self) -> RatFunc {
        if self.v.is_zero() {
            return if self.curve.is_elliptic() { self.u.mul(&self.u) } else { self.u.clone() };
        }
        let c = RatFunc::from_poly(self.curve.rhs().unwrap());
        self.u.mul(&self.u).sub(&self.v.mul(&self.v).mul(&c))
    }

    pub fn inv(&self) -> Option<FnElem> {
        if self.is_zero() {
            return None;
        }
        if self.v.is_zero() {
            return Some(FnElem { curve: self.curve.clone(), u: self.u.inv()?, v: self.v.clone() });
        }
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(FnElem { curve: self.curve.clone(), u: c.u.mul(&n), v: c.v.mul(&n) })
    }

    pub fn div(&self, o: &FnElem) -> Option<FnElem> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> FnElem {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut acc = FnElem::one(&self.curve);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        acc
    }

    /// Line: `max(deg num, deg den)`; elliptic: the larger of the heights of
    /// `u` and `v`.
    pub fn height(&self) -> usize {
        self.u.height().max(self.v.height())
    }

    pub fn parse(curve: &Curve, src: &str) -> Result<FnElem> {
        text::parse_eval(&FnAlgebra { curve }, src)
    }
}

impl fmt::Display for FnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.curve.var();
        if self.v.is_zero() {
            return write!(f, "{}", self.u.to_string_var(var));
        }
        let ypart = if self.v.is_one() { "y".to_string() } else { format!("({})*y", self.v.to_string_var(var)) };
        if self.u.is_zero() {
            write!(f, "{ypart}")
        } else {
            write!(f, "{}+{ypart}", self.u.to_string_var(var))
        }
    }
}

impl fmt::Debug for FnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct FnAlgebra<'a> {
    curve: &'a Curve,
}

impl Algebra for FnAlgebra<'_> {
    type Value = FnElem;
    fn int(&self, n: i64, _: usize) -> Result<FnElem> {
        Ok(FnElem::constant(self.curve, self.curve.base().from_int_raw(n)))
    }
    fn digits(&self, ds: &[u32], pos: usize) -> Result<FnElem> {
        let a = self
            .curve
            .base()
            .elem_from_digits_high_first(ds)
            .ok_or_else(|| Error::parse(pos, "invalid field element literal"))?;
        Ok(FnElem::constant(self.curve, a))
    }
    fn var(&self, name: &str, pos: usize) -> Result<FnElem> {
        if name == self.curve.var() {
            Ok(FnElem::var(self.curve))
        } else if name == "y" && self.curve.is_elliptic() {
            Ok(FnElem::y(self.curve).unwrap())
        } else {
            Err(Error::parse(pos, format!("unknown variable '{name}'")))
        }
    }
    fn add(&self, a: FnElem, b: FnElem) -> FnElem {
        a.add(&b)
    }
    fn sub(&self, a: FnElem, b: FnElem) -> FnElem {
        a.sub(&b)
    }
    fn mul(&self, a: FnElem, b: FnElem) -> FnElem {
        a.mul(&b)
    }
    fn neg(&self, a: FnElem) -> FnElem {
        a.neg()
    }
    fn div(&self, a: FnElem, b: FnElem, pos: usize) -> Result<FnElem> {
        a.div(&b).ok_or_else(|| Error::parse(pos, "division by zero"))
    }
    fn one(&self) -> FnElem {
        FnElem::one(self.curve)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::curve::CurveDesc;

    #[test]
    fn text_forms() {
        let p1 = CurveDesc::parse("p1 q=2").unwrap();
        let a = FnElem::parse(&p1, "t^2/(t+1)").unwrap();
        assert_eq!(a.to_string(), "(t^2)/(t+1)");
        assert_eq!(FnElem::parse(&p1, &a.to_string()).unwrap(), a);
        let e = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let y = FnElem::parse(&e, "y").unwrap();
        assert_eq!(y.mul(&y).to_string(), "x^3+x+1");
        let z = FnElem::parse(&e, "(x+1)/(x^2+2) + 3*x*y").unwrap();
        assert_eq!(z.to_string(), "(x+1)/(x^2+2)+(3*x)*y");
        assert_eq!(FnElem::parse(&e, &z.to_string()).unwrap(), z);
        assert!(matches!(FnElem::parse(&p1, "y"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn inverse_on_elliptic() {
        let e = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let z = FnElem::parse(&e, "x^2 + (x+3)*y").unwrap();
        assert!(z.mul(&z.inv().unwrap()).is_one());
    }
}
