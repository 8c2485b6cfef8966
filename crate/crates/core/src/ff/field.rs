//! Small finite fields `F_{p^d}` with table-driven multiplication.
//!
//! Elements are encoded as integers `a_0 + a_1 p + ... + a_{d-1} p^{d-1}`,
//! where `a_i` is the coefficient of `alpha^i` and `alpha` is a root of the
//! field modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Operations shared by the table fields and the residue fields `F_q[x]/(h)`.
pub trait Field {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of the integer `n` under `Z -> F`.
    fn from_int(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest field size built with full log tables.
pub const MAX_TABLE_SIZE: u64 = 1 << 16;

/// Descriptor of `F_{p^d}`.
pub struct FieldDesc {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a field descriptor.
pub type Fq = Arc<FieldDesc>;

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.p, self.d, self.modulus)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}
impl Eq for FieldDesc {}

/// Builds `F_{p^d}` for `1 <= d <= 4`, with the lexicographically smallest
/// monic irreducible modulus.
pub fn ff_make(p: u64, d: u32) -> Result<Fq> {
    if !(1..=4).contains(&d) {
        return Err(Error::DegreeOutOfRange(d));
    }
    FieldDesc::build(p, d)
}

/// Returns the prime field `F_p`.
pub fn prime_field(p: u64) -> Result<Fq> {
    FieldDesc::build(p, 1)
}

impl FieldDesc {
    /// Builds `F_{p^d}` without the degree bound of [`ff_make`]; the field size
    /// must still fit the table limit.
    pub fn build(p: u64, d: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::DegreeOutOfRange(d));
        }
        let q = (p as u128).pow(d);
        if q > MAX_TABLE_SIZE as u128 {
            return Err(Error::DegreeOutOfRange(d));
        }
        let p = p as u32;
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, d).ok_or(Error::NoIrreducible(d))?
        };
        let mut field = FieldDesc { p, d, q: q as u32, modulus, exp: Vec::new(), log: Vec::new() };
        field.build_tables()?;
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let gen = (1..self.q)
            .find(|&g| {
                factors.iter().all(|&r| self.slow_pow(g, order / r) != 1)
            })
            .ok_or(Error::NoIrreducible(self.d))?;
        let mut exp = vec![0u32; self.q as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, gen);
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.d as usize];
        for slot in out.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, ds: &[u32]) -> u32 {
        ds.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, d) = (self.p as u64, self.d as usize);
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * d];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let m = self.modulus[i] as u64;
                prod[k - d + i] = (prod[k - d + i] + p * p - c * m % p) % p;
            }
        }
        let out: Vec<u32> = prod[..d].iter().map(|&v| v as u32).collect();
        self.undigits(&out)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Monic modulus over `F_p`, low-order coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.d == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.d {
                out += ((a % self.p + b % self.p) % self.p) * scale;
                a /= self.p;
                b /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        if self.d == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.d {
                out += ((self.p - a % self.p) % self.p) * scale;
                a /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    #[inline]
    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }

    pub fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % order)) % order) as usize]
    }

    pub fn from_int_raw(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// A fixed primitive element.
    pub fn generator(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Whether `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: u32) -> bool {
        a < self.p
    }

    /// Canonical text of an element: an integer for prime fields, otherwise
    /// `[a_{d-1},...,a_0]`.
    pub fn elem_to_string(&self, a: u32) -> String {
        if self.d == 1 {
            a.to_string()
        } else {
            let ds = self.digits(a);
            let parts: Vec<String> = ds.iter().rev().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Encodes `[a_{d-1},...,a_0]` digit lists (high first).
    pub fn elem_from_digits_high_first(&self, ds: &[u32]) -> Option<u32> {
        if ds.len() != self.d as usize || ds.iter().any(|&x| x >= self.p) {
            return None;
        }
        let low: Vec<u32> = ds.iter().rev().copied().collect();
        Some(self.undigits(&low))
    }

    /// Coefficients of the element in the power basis, low order first.
    pub fn elem_digits(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }
}

impl Field for FieldDesc {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_raw(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_raw(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_raw(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_raw(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u32 {
        self.from_int_raw(n)
    }
}

/// An element bundled with its field.
#[derive(Clone)]
pub struct FFElem {
    pub field: Fq,
    pub rep: u32,
}

impl FFElem {
    pub fn new(field: &Fq, rep: u32) -> Self {
        assert!(rep < field.size(), "element out of range");
        FFElem { field: field.clone(), rep }
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && *self.field == *other.field
    }
}
impl Eq for FFElem {}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.elem_to_string(self.rep))
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.elem_to_string(self.rep))
    }
}

macro_rules! ffelem_binop {
    ($tr:ident, $method:ident, $raw:ident) => {
        impl std::ops::$tr for &FFElem {
            type Output = FFElem;
            fn $method(self, rhs: &FFElem) -> FFElem {
                debug_assert!(*self.field == *rhs.field);
                FFElem { field: self.field.clone(), rep: self.field.$raw(self.rep, rhs.rep) }
            }
        }
    };
}
ffelem_binop!(Add, add, add_raw);
ffelem_binop!(Sub, sub, sub_raw);
ffelem_binop!(Mul, mul, mul_raw);

/// Lexicographically smallest monic irreducible polynomial of degree `d`
/// over `F_p`, comparing `(c_{d-1}, ..., c_0)`.
fn smallest_irreducible(p: u32, d: u32) -> Option<Vec<u32>> {
    let total = (p as u64).pow(d);
    (0..total).find_map(|n| {
        // high coefficient digits first: n = c_{d-1} p^{d-1} + ... + c_0
        let mut coeffs = vec![0u32; d as usize + 1];
        let mut m = n;
        for slot in coeffs.iter_mut().take(d as usize) {
            *slot = (m % p as u64) as u32;
            m /= p as u64;
        }
        coeffs[d as usize] = 1;
        if has_no_factor(p, &coeffs) {
            Some(coeffs)
        } else {
            None
        }
    })
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most `deg/2`; only used at field-construction scale.
fn has_no_factor(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        return deg == 1;
    }
    for e in 1..=deg / 2 {
        let count = (p as u64).pow(e as u32);
        for n in 0..count {
            let mut g = vec![0u32; e + 1];
            let mut m = n;
            for slot in g.iter_mut().take(e) {
                *slot = (m % p as u64) as u32;
                m /= p as u64;
            }
            g[e] = 1;
            if divides_mod_p(p, &g, f) {
                return false;
            }
        }
    }
    true
}

fn divides_mod_p(p: u32, g: &[u32], f: &[u32]) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for i in 0..=dg {
            r[k - dg + i] = (r[k - dg + i] + p * p - c * g[i] as u64 % p) % p;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FieldDesc) {
        let q = f.size();
        for a in 0..q {
            assert_eq!(f.add_raw(a, f.neg_raw(a)), 0);
            assert_eq!(f.pow_raw(a, q as u64), a, "x^q = x");
            if a != 0 {
                assert_eq!(f.mul_raw(a, f.inv_raw(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add_raw(a, b), f.add_raw(b, a));
                assert_eq!(f.mul_raw(a, b), f.mul_raw(b, a));
                assert_eq!(f.mul_raw(a, b), f.slow_mul(a, b));
                for c in [0, 1, q - 1, (a + b) % q] {
                    let lhs = f.mul_raw(a, f.add_raw(b, c));
                    let rhs = f.add_raw(f.mul_raw(a, b), f.mul_raw(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for (p, d) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)] {
            let f = ff_make(p, d).unwrap();
            assert_eq!(f.size() as u64, p.pow(d));
            check_axioms(&f);
        }
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        let f = ff_make(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(ff_make(2, 1).unwrap().size(), 2);
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        assert_eq!(ff_make(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(ff_make(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(ff_make(2, 5).unwrap_err(), Error::DegreeOutOfRange(5));
        assert_eq!(ff_make(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
    }

    #[test]
    fn fermat_in_f3() {
        let f = ff_make(3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.pow_raw(x, 3), x);
        }
    }

    #[test]
    fn element_text_round_trip() {
        let f = ff_make(3, 2).unwrap();
        for a in f.elements() {
            let s = f.elem_to_string(a);
            let inner: Vec<u32> =
                s.trim_matches(|c| c == '[' || c == ']').split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(f.elem_from_digits_high_first(&inner), Some(a));
        }
    }
}
