//! Dense univariate polynomials over a table field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use super::field::Fq;
use crate::error::{Error, Result};
use crate::text::{self, Algebra};

/// Degree cap for polynomials entering through constructors, the parser and
/// the factorizer.
pub const DEGREE_CAP: usize = 64;

/// Polynomial with coefficients low-order first and no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Fq,
    c: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl Poly {
    pub fn new(field: &Fq, mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        debug_assert!(c.iter().all(|&x| x < field.size()));
        Poly { field: field.clone(), c }
    }

    /// Like [`Poly::new`] but enforcing [`DEGREE_CAP`].
    pub fn checked(field: &Fq, c: Vec<u32>) -> Result<Self> {
        let p = Poly::new(field, c);
        p.check_cap()?;
        Ok(p)
    }

    pub fn check_cap(&self) -> Result<()> {
        match self.degree() {
            Some(d) if d > DEGREE_CAP => Err(Error::DegreeCap(d)),
            _ => Ok(()),
        }
    }

    pub fn zero(field: &Fq) -> Self {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Fq) -> Self {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Fq, a: u32) -> Self {
        Poly::new(field, vec![a])
    }

    /// The variable `t`.
    pub fn var(field: &Fq) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn monomial(field: &Fq, a: u32, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly::new(field, c)
    }

    /// `t - a`.
    pub fn linear(field: &Fq, a: u32) -> Self {
        Poly::new(field, vec![field.neg_raw(a), 1])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), c: self.c.iter().map(|&x| f.neg_raw(x)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add_raw(self.coeff(i), o.coeff(i))).collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.sub_raw(self.coeff(i), o.coeff(i))).collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add_raw(c[i + j], f.mul_raw(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn scale(&self, a: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&x| f.mul_raw(x, a)).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly::new(&self.field, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Division with remainder. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.c.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv_raw(d.lead()).expect("nonzero lead");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![0u32; self.c.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul_raw(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.c.iter().enumerate() {
                r[k - dd + i] = f.sub_raw(r[k - dd + i], f.mul_raw(c, di));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic associate together with the removed leading coefficient.
    pub fn monic(&self) -> (u32, Poly) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let l = self.lead();
        let inv = self.field.inv_raw(l).unwrap();
        (l, self.scale(inv))
    }

    /// Monic gcd (zero only if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic().1
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv_raw(r0.lead()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod_big(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul_raw(a, f.from_int_raw(i as i64)))
            .collect();
        Poly::new(f, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add_raw(f.mul_raw(acc, x), a))
    }

    /// `self(g)`, computed modulo `m` when given.
    pub fn compose(&self, g: &Poly, m: Option<&Poly>) -> Poly {
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for &a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(f, a));
            if let Some(m) = m {
                acc = acc.rem(m);
            }
        }
        acc
    }

    /// Position in the enumeration of polynomials by base-`q` digits.
    pub fn to_index(&self) -> u128 {
        let q = self.field.size() as u128;
        self.c.iter().rev().fold(0u128, |acc, &a| acc * q + a as u128)
    }

    pub fn from_index(field: &Fq, mut n: u128) -> Poly {
        let q = field.size() as u128;
        let mut c = Vec::new();
        while n > 0 {
            c.push((n % q) as u32);
            n /= q;
        }
        Poly::new(field, c)
    }

    /// All monic polynomials of exact degree `d`.
    pub fn monics_of_degree(field: &Fq, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.size() as u128;
        let count = q.pow(d as u32);
        let top = count;
        (0..count).map(move |n| Poly::from_index(field, top + n))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (k, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let coeff = f.elem_to_string(a);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(match (k, a) {
                (0, _) => coeff,
                (_, 1) => mono,
                _ => format!("{coeff}*{mono}"),
            });
        }
        terms.join("+")
    }

    /// Parses the canonical text form (any polynomial expression in `var`
    /// without division is accepted).
    pub fn parse(field: &Fq, src: &str) -> Result<Poly> {
        Poly::parse_var(field, src, "t")
    }

    pub fn parse_var(field: &Fq, src: &str, var: &str) -> Result<Poly> {
        let alg = PolyAlgebra { field, var };
        let p = text::parse_eval(&alg, src)?;
        if let Some(d) = p.degree() {
            if d > DEGREE_CAP {
                return Err(Error::DegreeCap(d));
            }
        }
        Ok(p)
    }
}

struct PolyAlgebra<'a> {
    field: &'a Fq,
    var: &'a str,
}

impl Algebra for PolyAlgebra<'_> {
    type Value = Poly;
    fn int(&self, n: i64, _: usize) -> Result<Poly> {
        Ok(Poly::constant(self.field, self.field.from_int_raw(n)))
    }
    fn digits(&self, ds: &[u32], pos: usize) -> Result<Poly> {
        let a = self
            .field
            .elem_from_digits_high_first(ds)
            .ok_or_else(|| Error::parse(pos, "invalid field element literal"))?;
        Ok(Poly::constant(self.field, a))
    }
    fn var(&self, name: &str, pos: usize) -> Result<Poly> {
        if name == self.var {
            Ok(Poly::var(self.field))
        } else {
            Err(Error::parse(pos, format!("unknown variable '{name}'")))
        }
    }
    fn add(&self, a: Poly, b: Poly) -> Poly {
        a.add(&b)
    }
    fn sub(&self, a: Poly, b: Poly) -> Poly {
        a.sub(&b)
    }
    fn mul(&self, a: Poly, b: Poly) -> Poly {
        a.mul(&b)
    }
    fn neg(&self, a: Poly) -> Poly {
        a.neg()
    }
    fn div(&self, a: Poly, b: Poly, pos: usize) -> Result<Poly> {
        if b.is_constant() && !b.is_zero() {
            Ok(a.scale(self.field.inv_raw(b.lead()).unwrap()))
        } else {
            Err(Error::parse(pos, "division is not allowed in a polynomial"))
        }
    }
    fn one(&self) -> Poly {
        Poly::one(self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::ff_make;
    use proptest::prelude::*;

    fn p(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn canonical_text() {
        let f2 = ff_make(2, 1).unwrap();
        assert_eq!(p(&f2, "t^2+t+1").to_string(), "t^2+t+1");
        assert_eq!(p(&f2, "(t+1)^2").to_string(), "t^2+1");
        let f3 = ff_make(3, 1).unwrap();
        assert_eq!(p(&f3, "2*t^3 - t").to_string(), "2*t^3+2*t");
        assert_eq!(p(&f3, "0").to_string(), "0");
        let f4 = ff_make(2, 2).unwrap();
        let g = p(&f4, "[1,0]*t^2+[1,1]");
        assert_eq!(g.to_string(), "[1,0]*t^2+[1,1]");
        assert_eq!(p(&f4, "[0,1]*t").to_string(), "t");
    }

    #[test]
    fn rejects_division_and_cap() {
        let f2 = ff_make(2, 1).unwrap();
        assert!(matches!(Poly::parse(&f2, "1/t"), Err(Error::Parse { pos: 1, .. })));
        assert_eq!(Poly::parse(&f2, "t^65").unwrap_err(), Error::DegreeCap(65));
        assert!(Poly::checked(&f2, vec![1; 66]).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let f2 = ff_make(2, 1).unwrap();
        let (a, b) = (p(&f2, "t^2"), p(&f2, "t^2+1"));
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    fn arb_poly(f: Fq, max_deg: usize) -> impl Strategy<Value = Poly> {
        let q = f.size();
        proptest::collection::vec(0..q, 0..=max_deg + 1).prop_map(move |c| Poly::new(&f, c))
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_poly(ff_make(3, 2).unwrap(), 8)) {
            let f = a.field().clone();
            let s = a.to_string();
            let b = Poly::parse(&f, &s).unwrap();
            prop_assert_eq!(&b, &a);
            prop_assert_eq!(b.to_string(), s);
        }

        #[test]
        fn division_is_exact(a in arb_poly(ff_make(5, 1).unwrap(), 10), b in arb_poly(ff_make(5, 1).unwrap(), 5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            prop_assert!(r.deg() < b.deg());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&b).deg(), a.deg() + b.deg());
            }
        }
    }
}
