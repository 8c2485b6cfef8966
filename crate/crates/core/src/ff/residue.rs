//! Residue fields `F_q[x]/(h)` for irreducible `h`, with elements stored as
//! reduced polynomials.

use num_bigint::BigUint;
use num_traits::One;

use super::field::{Field, Fq};
use super::poly::Poly;

#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    /// `h` must be irreducible; this is not rechecked.
    pub fn new(h: &Poly) -> Self {
        let (_, m) = h.monic();
        ResidueField { modulus: m }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn base(&self) -> &Fq {
        self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.base().size()).pow(self.degree() as u32)
    }

    /// Class of the variable.
    pub fn gen(&self) -> Poly {
        Poly::var(self.base()).rem(&self.modulus)
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    pub fn embed(&self, c: u32) -> Poly {
        Poly::constant(self.base(), c)
    }

    pub fn pow_big(&self, a: &Poly, e: &BigUint) -> Poly {
        a.pow_mod_big(e, &self.modulus)
    }

    /// `a^{|F_q|}`.
    pub fn frobenius(&self, a: &Poly) -> Poly {
        a.pow_mod(self.base().size() as u128, &self.modulus)
    }

    pub fn is_square(&self, a: &Poly) -> bool {
        if a.is_zero() {
            return true;
        }
        let e = (self.order() - 1u32) >> 1;
        self.pow_big(a, &e).is_one()
    }

    /// A square root by Tonelli-Shanks (odd characteristic only).
    pub fn sqrt(&self, a: &Poly) -> Option<Poly> {
        assert!(self.base().characteristic() != 2, "odd characteristic required");
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(&a) {
            return None;
        }
        let qm1 = self.order() - 1u32;
        let s = qm1.trailing_zeros().unwrap();
        let odd = &qm1 >> s;
        // deterministic search for a non-residue
        let z = (1u128..)
            .map(|n| self.reduce(&Poly::from_index(self.base(), n)))
            .find(|c| !c.is_zero() && !self.is_square(c))
            .unwrap();
        let mut m = s;
        let mut c = self.pow_big(&z, &odd);
        let mut t = self.pow_big(&a, &odd);
        let mut r = self.pow_big(&a, &((&odd + BigUint::one()) >> 1));
        while !t.is_one() {
            let mut i = 0;
            let mut tt = t.clone();
            while !tt.is_one() {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for ResidueField {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(self.base())
    }
    fn one(&self) -> Poly {
        Poly::one(self.base())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.base(), self.base().from_int_raw(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::ff_make;

    #[test]
    fn sqrt_in_extensions() {
        let f5 = ff_make(5, 1).unwrap();
        for h in ["x+1", "x^2+2", "x^3+x+1"] {
            let h = Poly::parse_var(&f5, h, "x").unwrap();
            let k = ResidueField::new(&h);
            let mut squares = 0;
            for n in 0..(5u128.pow(k.degree() as u32)) {
                let a = Poly::from_index(&f5, n);
                if let Some(r) = k.sqrt(&a) {
                    assert_eq!(k.mul(&r, &r), a);
                    squares += 1;
                }
            }
            let order = 5usize.pow(k.degree() as u32);
            assert_eq!(squares, (order - 1) / 2 + 1);
        }
    }
}
