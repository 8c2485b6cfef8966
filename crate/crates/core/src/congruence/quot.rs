//! Finite quotient rings `F_q[t]/(f)` and matrices over them.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{is_irreducible, Poly};
use crate::funcfield::{FnElem, RatFunc};
use crate::slgroups::MatK;

/// Largest ring the enumerations accept.
pub const MAX_RING: u64 = 4096;
// rings up to this size get full addition and multiplication tables
const TABLE_LIMIT: u32 = 256;

/// `F_q[t]/(f)` with elements encoded as the base-`q` index of their reduced
/// representative, so `0` and `1` are the ring's zero and one.
#[derive(Clone)]
pub struct QuotRing {
    f: Poly,
    size: u32,
    field: bool,
    elems: Vec<Poly>,
    inv: Vec<Option<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl QuotRing {
    pub fn new(f: &Poly) -> Result<QuotRing> {
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Invalid("modulus must be nonconstant".into())),
        };
        let (_, f) = f.monic();
        let q = f.field().size() as u64;
        let size = q
            .checked_pow(d as u32)
            .filter(|&s| s <= MAX_RING)
            .ok_or_else(|| Error::BudgetExceeded(format!("|R| = {q}^{d} exceeds {MAX_RING}")))?
            as u32;
        let elems: Vec<Poly> = (0..size).map(|i| Poly::from_index(f.field(), i as u128)).collect();
        let enc = |p: &Poly| p.to_index() as u32;
        let inv = elems.iter().map(|a| a.inv_mod(&f).map(|b| enc(&b))).collect();
        let (mut add, mut mul) = (Vec::new(), Vec::new());
        if size <= TABLE_LIMIT {
            for a in &elems {
                for b in &elems {
                    add.push(enc(&a.add(b)));
                    mul.push(enc(&a.mul_mod(b, &f)));
                }
            }
        }
        Ok(QuotRing { field: is_irreducible(&f), f, size, elems, inv, add, mul })
    }

    pub fn modulus(&self) -> &Poly {
        &self.f
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_field(&self) -> bool {
        self.field
    }

    pub fn elem(&self, a: u32) -> &Poly {
        &self.elems[a as usize]
    }

    pub fn encode(&self, p: &Poly) -> u32 {
        p.rem(&self.f).to_index() as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add.is_empty() {
            self.encode(&self.elem(a).add(self.elem(b)))
        } else {
            self.add[(a * self.size + b) as usize]
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.encode(&self.elem(a).neg())
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.mul.is_empty() {
            self.encode(&self.elem(a).mul_mod(self.elem(b), &self.f))
        } else {
            self.mul[(a * self.size + b) as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.inv[a as usize]
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize].is_some()
    }

    pub fn units(&self) -> Vec<u32> {
        (0..self.size).filter(|&a| self.is_unit(a)).collect()
    }

    /// Image of `x` in `R`, or `PoleAtModulus` when a denominator meets `f`.
    pub fn reduce(&self, x: &RatFunc) -> Result<u32> {
        x.reduce_mod(&self.f).map(|p| self.encode(&p)).ok_or(Error::PoleAtModulus)
    }

    pub fn reduce_elem(&self, x: &FnElem) -> Result<u32> {
        if x.curve().is_elliptic() {
            return Err(Error::Unsupported("quotient rings live over F_q[t]".into()));
        }
        self.reduce(x.u())
    }

    pub fn render(&self, a: u32) -> String {
        self.elem(a).to_string_var("t")
    }
}

impl fmt::Debug for QuotRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]/({})", self.f.field().size(), self.f.to_string_var("t"))
    }
}

/// Square matrix over a [`QuotRing`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMat {
    n: usize,
    e: Vec<u32>,
}

impl RingMat {
    pub fn new(n: usize, e: Vec<u32>) -> RingMat {
        assert_eq!(e.len(), n * n);
        RingMat { n, e }
    }

    pub fn identity(n: usize) -> RingMat {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        RingMat { n, e }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.e
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: u32) {
        self.e[i * self.n + j] = a;
    }

    pub fn is_identity(&self) -> bool {
        *self == RingMat::identity(self.n)
    }

    pub fn mul(&self, r: &QuotRing, o: &RingMat) -> RingMat {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = r.add(acc, r.mul(self.get(i, k), o.get(k, j)));
                }
                e[i * n + j] = acc;
            }
        }
        RingMat { n, e }
    }

    /// Laplace expansion along the first row.
    pub fn det(&self, r: &QuotRing) -> u32 {
        fn go(r: &QuotRing, m: &RingMat, rows: &[usize], col: usize) -> u32 {
            if rows.len() == 1 {
                return m.get(rows[0], col);
            }
            let mut acc = 0;
            for (k, &i) in rows.iter().enumerate() {
                let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != i).collect();
                let term = r.mul(m.get(i, col), go(r, m, &rest, col + 1));
                acc = if k % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
            }
            acc
        }
        go(r, self, &(0..self.n).collect::<Vec<_>>(), 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// `pi_I(m)` entrywise.
    pub fn reduce(r: &QuotRing, m: &MatK) -> Result<RingMat> {
        let e = m.entries().iter().map(|x| r.reduce_elem(x)).collect::<Result<_>>()?;
        Ok(RingMat { n: m.n(), e })
    }

    pub fn render(&self, r: &QuotRing) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| r.render(self.get(i, j))).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::ff_make;

    #[test]
    fn ring_basics() {
        let f2 = ff_make(2, 1).unwrap();
        let r = QuotRing::new(&Poly::parse(&f2, "t^2").unwrap()).unwrap();
        assert_eq!(r.size(), 4);
        assert!(!r.is_field());
        assert_eq!(r.units().len(), 2);
        // t * t = 0
        let t = r.encode(&Poly::var(&f2));
        assert_eq!(r.mul(t, t), 0);
        let r4 = QuotRing::new(&Poly::parse(&f2, "t^2+t+1").unwrap()).unwrap();
        assert!(r4.is_field());
        assert_eq!(r4.units().len(), 3);
        for a in 1..4 {
            assert_eq!(r4.mul(a, r4.inv(a).unwrap()), 1);
        }
        assert!(matches!(QuotRing::new(&Poly::one(&f2)), Err(Error::Invalid(_))));
        assert!(matches!(QuotRing::new(&Poly::var(&f2).pow(13)), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn untabled_ring_agrees() {
        let f3 = ff_make(3, 1).unwrap();
        // 3^6 = 729 > table limit
        let r = QuotRing::new(&Poly::parse(&f3, "t^6+2*t+1").unwrap()).unwrap();
        let a = r.encode(&Poly::parse(&f3, "t^5+t+2").unwrap());
        let b = r.encode(&Poly::parse(&f3, "2*t^4+t^3").unwrap());
        let want = Poly::parse(&f3, "t^5+t+2").unwrap().mul_mod(&Poly::parse(&f3, "2*t^4+t^3").unwrap(), r.modulus());
        assert_eq!(r.elem(r.mul(a, b)), &want);
        assert_eq!(r.sub(r.add(a, b), b), a);
    }
}
