//! Reduced fractions of polynomials over `F_q`.

use std::fmt;

use crate::ff::factor::multiplicity;
use crate::ff::{Fq, Poly};

/// `num/den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero(num.field());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let (l, den) = den.monic();
        let inv = num.field().inv_raw(l).unwrap();
        RatFunc { num: num.scale(inv), den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let f = p.field().clone();
        RatFunc { num: p, den: Poly::one(&f) }
    }

    pub fn zero(field: &Fq) -> Self {
        RatFunc { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Fq) -> Self {
        RatFunc::constant(field, 1)
    }

    pub fn constant(field: &Fq, c: u32) -> Self {
        RatFunc::from_poly(Poly::constant(field, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Fq {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: u32) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Multiplicity of the irreducible `h` (numerator minus denominator).
    pub fn val_at(&self, h: &Poly) -> i64 {
        assert!(!self.is_zero());
        multiplicity(&self.num, h) as i64 - multiplicity(&self.den, h) as i64
    }

    /// `deg den - deg num`, the order at the infinite place of the line.
    pub fn val_at_infinity(&self) -> i64 {
        assert!(!self.is_zero());
        self.den.deg() - self.num.deg()
    }

    /// `max(deg num, deg den)`.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Image modulo `m`, or `None` if the denominator shares a factor with it.
    pub fn reduce_mod(&self, m: &Poly) -> Option<Poly> {
        let inv = self.den.inv_mod(m)?;
        Some(self.num.mul_mod(&inv, m))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_string_var(var)
        } else {
            format!("({})/({})", self.num.to_string_var(var), self.den.to_string_var(var))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}
