//! Valuations on `E` by expanding in a local parameter.
//!
//! At an affine point with `y0 != 0` the parameter is `x - x0`; at a
//! 2-torsion point it is `y`; at `O` it is `z = -x/y`, with `w = -1/y`
//! solving `w = z^3 + a z w^2 + b w^3`. The closed-form valuation in
//! [`super::valuation`] is the fast path; this route is the independent check.

use super::curve::Curve;
use super::elem::FnElem;
use super::elliptic::{representative_point, EcPoint};
use super::place::Place;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, Poly};

pub const DEFAULT_PRECISION: usize = 24;
pub const MAX_PRECISION: usize = 96;

/// `sum c[i] s^(v+i)`, known modulo `s^(v + c.len())`.
#[derive(Clone, Debug)]
struct Laurent {
    v: i64,
    c: Vec<u32>,
}

struct Ring<'a> {
    f: &'a FieldDesc,
    n: usize,
}

impl Ring<'_> {
    fn constant(&self, a: u32) -> Laurent {
        let mut c = vec![0; self.n];
        c[0] = a;
        Laurent { v: 0, c }
    }

    fn abs_prec(x: &Laurent) -> i64 {
        x.v + x.c.len() as i64
    }

    fn add(&self, x: &Laurent, y: &Laurent) -> Laurent {
        let v = x.v.min(y.v);
        let top = Self::abs_prec(x).min(Self::abs_prec(y));
        let len = (top - v).max(0) as usize;
        let mut c = vec![0; len];
        for (src, off) in [(x, x.v - v), (y, y.v - v)] {
            for (i, &a) in src.c.iter().enumerate() {
                let k = i + off as usize;
                if k < len {
                    c[k] = self.f.add_raw(c[k], a);
                }
            }
        }
        Laurent { v, c }
    }

    fn neg(&self, x: &Laurent) -> Laurent {
        Laurent { v: x.v, c: x.c.iter().map(|&a| self.f.neg_raw(a)).collect() }
    }

    /// Strips leading zeros; an entirely unknown series is an error.
    fn normalize(&self, x: &Laurent) -> Result<Laurent> {
        match x.c.iter().position(|&a| a != 0) {
            Some(k) => Ok(Laurent { v: x.v + k as i64, c: x.c[k..].to_vec() }),
            None => Err(Error::PrecisionExhausted(self.n)),
        }
    }

    fn mul(&self, x: &Laurent, y: &Laurent) -> Result<Laurent> {
        let (x, y) = (self.normalize(x)?, self.normalize(y)?);
        let len = x.c.len().min(y.c.len());
        let mut c = vec![0; len];
        for i in 0..len {
            for j in 0..len - i {
                c[i + j] = self.f.add_raw(c[i + j], self.f.mul_raw(x.c[i], y.c[j]));
            }
        }
        Ok(Laurent { v: x.v + y.v, c })
    }

    fn inv(&self, x: &Laurent) -> Result<Laurent> {
        let x = self.normalize(x)?;
        let len = x.c.len();
        let i0 = self.f.inv_raw(x.c[0]).unwrap();
        let mut c = vec![0; len];
        c[0] = i0;
        for k in 1..len {
            let mut acc = 0;
            for i in 1..=k {
                acc = self.f.add_raw(acc, self.f.mul_raw(x.c[i], c[k - i]));
            }
            c[k] = self.f.neg_raw(self.f.mul_raw(acc, i0));
        }
        Ok(Laurent { v: -x.v, c })
    }

    fn poly(&self, p: &Poly, x: &Laurent) -> Result<Laurent> {
        let mut acc = Laurent { v: 0, c: vec![0; self.n] };
        let mut first = true;
        for &a in p.coeffs().iter().rev() {
            acc = if first { self.constant(a) } else { self.add(&self.mul_or_zero(&acc, x)?, &self.constant(a)) };
            first = false;
        }
        Ok(acc)
    }

    // product where a zero left factor stays zero to its known precision
    fn mul_or_zero(&self, acc: &Laurent, x: &Laurent) -> Result<Laurent> {
        if acc.c.iter().all(|&a| a == 0) {
            let xv = self.normalize(x)?.v;
            return Ok(Laurent { v: acc.v + xv, c: acc.c.clone() });
        }
        self.mul(acc, x)
    }

    fn ratfunc(&self, r: &RatFunc, x: &Laurent) -> Result<Laurent> {
        let n = self.poly(r.num(), x)?;
        if r.den().is_one() {
            return Ok(n);
        }
        let d = self.poly(r.den(), x)?;
        self.mul(&n, &self.inv(&d)?)
    }
}

/// Expansions of the coordinates `(x, y)` in the local parameter.
fn coordinates(ring: &Ring<'_>, a: u32, b: u32, pt: &EcPoint<u32>) -> Result<(Laurent, Laurent)> {
    let f = ring.f;
    let n = ring.n;
    match *pt {
        EcPoint::Infinity => {
            // w(z) = z^3 + a z w^2 + b w^3 by fixed point; each pass fixes two more terms
            let len = n + 3;
            let mut w = vec![0u32; len];
            for _ in 0..=len {
                let w2 = trunc_mul(f, &w, &w, len);
                let w3 = trunc_mul(f, &w2, &w, len);
                let mut next = vec![0u32; len];
                next[3] = 1;
                for k in 0..len {
                    if k >= 1 {
                        next[k] = f.add_raw(next[k], f.mul_raw(a, w2[k - 1]));
                    }
                    next[k] = f.add_raw(next[k], f.mul_raw(b, w3[k]));
                }
                if next == w {
                    break;
                }
                w = next;
            }
            let ws = Laurent { v: 0, c: w };
            let z = Laurent { v: 1, c: unit(n) };
            let winv = ring.inv(&ws)?;
            let x = ring.mul(&z, &winv)?;
            let y = ring.neg(&winv);
            Ok((x, y))
        }
        EcPoint::Affine(x0, y0) if y0 != 0 => {
            // y^2 = c(x0 + s), solved term by term from y(0) = y0
            let xs = Laurent { v: 0, c: { let mut c = unit(n); c[0] = x0; if n > 1 { c[1] = 1; } c } };
            let cpoly = {
                let s = Laurent { v: 0, c: { let mut c = vec![0; n]; if n > 1 { c[1] = 1; } c } };
                let xx = ring.add(&ring.constant(x0), &s);
                let x3 = ring.mul(&ring.mul(&xx, &xx)?, &xx)?;
                let t = ring.add(&x3, &scalar(ring, &xx, a));
                expand(&ring.add(&t, &ring.constant(b)), n)
            };
            let two_y0_inv = f.inv_raw(f.mul_raw(2, y0)).unwrap();
            let mut yc = vec![0u32; n];
            yc[0] = y0;
            for k in 1..n {
                let mut acc = cpoly[k];
                for i in 1..k {
                    acc = f.sub_raw(acc, f.mul_raw(yc[i], yc[k - i]));
                }
                yc[k] = f.mul_raw(acc, two_y0_inv);
            }
            Ok((xs, Laurent { v: 0, c: yc }))
        }
        EcPoint::Affine(x0, _) => {
            // y = s, x = x0 + X(s) with c1 X + c2 X^2 + X^3 = s^2
            let c1 = f.add_raw(f.mul_raw(3, f.mul_raw(x0, x0)), a);
            let c2 = f.mul_raw(3, x0);
            let c1inv = f.inv_raw(c1).expect("smooth curve");
            let mut xx = vec![0u32; n];
            for _ in 0..=n {
                let x2 = trunc_mul(f, &xx, &xx, n);
                let x3 = trunc_mul(f, &x2, &xx, n);
                let mut next = vec![0u32; n];
                for k in 0..n {
                    let mut r = if k == 2 { 1 } else { 0 };
                    r = f.sub_raw(r, f.mul_raw(c2, x2[k]));
                    r = f.sub_raw(r, x3[k]);
                    next[k] = f.mul_raw(r, c1inv);
                }
                if next == xx {
                    break;
                }
                xx = next;
            }
            xx[0] = f.add_raw(xx[0], x0);
            let s = Laurent { v: 1, c: unit(n) };
            Ok((Laurent { v: 0, c: xx }, s))
        }
    }
}

fn unit(n: usize) -> Vec<u32> {
    let mut c = vec![0; n];
    c[0] = 1;
    c
}

fn scalar(ring: &Ring<'_>, x: &Laurent, a: u32) -> Laurent {
    Laurent { v: x.v, c: x.c.iter().map(|&e| ring.f.mul_raw(e, a)).collect() }
}

// coefficients 0..n of a series with v >= 0
fn expand(x: &Laurent, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for (i, &a) in x.c.iter().enumerate() {
        let k = i as i64 + x.v;
        if (0..n as i64).contains(&k) {
            out[k as usize] = a;
        }
    }
    out
}

fn trunc_mul(f: &FieldDesc, x: &[u32], y: &[u32], len: usize) -> Vec<u32> {
    let mut c = vec![0; len];
    for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (j, &b) in y.iter().enumerate().take(len - i) {
            c[i + j] = f.add_raw(c[i + j], f.mul_raw(a, b));
        }
    }
    c
}

/// Order of vanishing at `place` using `n` terms of the expansion.
pub fn elliptic_valuation_at(x: &FnElem, place: &Place, n: usize) -> Result<i64> {
    let curve: &Curve = x.curve();
    let (a, b) = curve.ab().ok_or_else(|| Error::Unsupported("elliptic curve required".into()))?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if place.degree() > 3 {
        return Err(Error::Invalid("series valuations are limited to places of degree 3".into()));
    }
    let (field, pt) = representative_point(curve, place)?;
    let ring = Ring { f: &field, n };
    let (xs, ys) = coordinates(&ring, a, b, &pt)?;
    let u = if x.u().is_zero() { None } else { Some(ring.ratfunc(x.u(), &xs)?) };
    let v = if x.v().is_zero() { None } else { Some(ring.mul(&ring.ratfunc(x.v(), &xs)?, &ys)?) };
    let total = match (u, v) {
        (Some(u), Some(v)) => ring.add(&u, &v),
        (Some(s), None) | (None, Some(s)) => s,
        (None, None) => unreachable!(),
    };
    Ok(ring.normalize(&total)?.v)
}

/// `elliptic_valuation_at` starting from 24 terms and doubling up to 96.
pub fn elliptic_valuation(x: &FnElem, place: &Place) -> Result<i64> {
    let mut n = DEFAULT_PRECISION;
    loop {
        match elliptic_valuation_at(x, place, n) {
            Err(Error::PrecisionExhausted(_)) if n < MAX_PRECISION => n *= 2,
            other => return other,
        }
    }
}
