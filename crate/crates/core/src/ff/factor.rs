//! Irreducibility, enumeration of irreducibles and factorization in `F_q[t]`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors, Fq};
use super::poly::{Poly, DEGREE_CAP};
use crate::error::{Error, Result};

/// A factorization `lead * prod f_i^{e_i}` with monic irreducible `f_i` in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Fq) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.lead), |acc, (f, e)| acc.mul(&f.pow(*e as u64)))
    }
}

/// Rabin's test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let q = f.field().size() as u128;
    let x = Poly::var(f.field());
    let frob_pow = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(q, f);
        }
        h
    };
    if frob_pow(n) != x.rem(f) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = frob_pow(n / r as usize);
        h.sub(&x).gcd(f).is_one()
    })
}

/// Every monic irreducible of degree `1..=max_deg`, by sieving out products
/// of smaller irreducibles. Ordered by degree, then lexicographically.
pub fn irreducibles_up_to(field: &Fq, max_deg: usize) -> Vec<Poly> {
    let mut irr: Vec<Poly> = Vec::new();
    let mut composite: HashSet<u128> = HashSet::new();
    for d in 1..=max_deg {
        let mut this_degree = Vec::new();
        for f in Poly::monics_of_degree(field, d) {
            if !composite.contains(&f.to_index()) {
                this_degree.push(f);
            }
        }
        irr.extend(this_degree);
        // mark products landing in degree d+1..=max_deg
        if d < max_deg {
            mark_products(field, &irr, d + 1, &mut composite);
        }
    }
    irr
}

/// Marks every reducible monic of degree `lo`: each is an irreducible of
/// smaller degree times a monic cofactor.
fn mark_products(field: &Fq, irr: &[Poly], lo: usize, out: &mut HashSet<u128>) {
    for g in irr {
        let dg = g.degree().unwrap();
        if dg >= lo {
            continue;
        }
        for h in Poly::monics_of_degree(field, lo - dg) {
            out.insert(g.mul(&h).to_index());
        }
    }
}

fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let e = (field.size() / field.characteristic()) as u64;
    let c: Vec<u32> = f.coeffs().iter().step_by(p).map(|&a| field.pow_raw(a, e)).collect();
    Poly::new(field, c)
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field();
    let p = field.characteristic();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.size() as u128;
    let x = Poly::var(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i as i64 {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_one() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    let q = field.size();
    let even = field.characteristic() == 2;
    let exponent = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = Poly::new(field, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if even {
            let k = field.degree() as usize * d;
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..k {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod_big(&exponent, f).sub(&Poly::one(field))
        };
        let g = f.gcd(&b);
        if !g.is_one() && g.deg() < f.deg() {
            let h = f.div_exact(&g).unwrap();
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Factors `f` into monic irreducibles.
pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = f.degree().unwrap();
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCap(deg));
    }
    let (lead, monic) = f.monic();
    let mut acc: BTreeMap<Poly, u32> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);
    for (sq, m) in squarefree(&monic) {
        for (g, d) in distinct_degree(&sq) {
            let mut parts = Vec::new();
            equal_degree(&g, d, &mut rng, &mut parts);
            for part in parts {
                *acc.entry(part).or_insert(0) += m;
            }
        }
    }
    Ok(Factorization { lead, factors: acc.into_iter().collect() })
}

/// Multiplicity of the irreducible `p` in `f`.
pub fn multiplicity(f: &Poly, p: &Poly) -> u32 {
    let mut k = 0;
    let mut g = f.clone();
    while !g.is_zero() {
        match g.div_exact(p) {
            Some(h) => {
                g = h;
                k += 1;
            }
            None => break,
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::ff_make;
    use proptest::prelude::*;

    fn mobius(n: u64) -> i64 {
        let mut n = n;
        let mut k = 0;
        let mut f = 2;
        while f * f <= n {
            if n % f == 0 {
                n /= f;
                if n % f == 0 {
                    return 0;
                }
                k += 1;
            }
            f += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn irreducibles_small_examples() {
        let f2 = ff_make(2, 1).unwrap();
        let names: Vec<String> = irreducibles_up_to(&f2, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["t", "t+1", "t^2+t+1"]);
        let f3 = ff_make(3, 1).unwrap();
        let names: Vec<String> = irreducibles_up_to(&f3, 1).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["t", "t+1", "t+2"]);
    }

    #[test]
    fn necklace_counts() {
        for (p, d) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = ff_make(p, d).unwrap();
            let q = f.size() as u64;
            let irr = irreducibles_up_to(&f, 4);
            for m in 1..=4u64 {
                let count = irr.iter().filter(|g| g.degree() == Some(m as usize)).count() as i64;
                let formula: i64 = (1..=m)
                    .filter(|e| m % e == 0)
                    .map(|e| mobius(e) * q.pow((m / e) as u32) as i64)
                    .sum::<i64>()
                    / m as i64;
                assert_eq!(count, formula, "q={q} m={m}");
                // sum_{e | m} e N_e = q^m
                let weighted: i64 = (1..=m)
                    .filter(|e| m % e == 0)
                    .map(|e| e as i64 * irr.iter().filter(|g| g.degree() == Some(e as usize)).count() as i64)
                    .sum();
                assert_eq!(weighted, q.pow(m as u32) as i64);
            }
            for g in &irr {
                assert!(is_irreducible(g));
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f2 = ff_make(2, 1).unwrap();
        let fa = poly_factor(&Poly::parse(&f2, "t^2+t").unwrap()).unwrap();
        assert_eq!(fa.lead, 1);
        assert_eq!(fa.factors, vec![(Poly::parse(&f2, "t").unwrap(), 1), (Poly::parse(&f2, "t+1").unwrap(), 1)]);
        let fa = poly_factor(&Poly::parse(&f2, "t^2+t+1").unwrap()).unwrap();
        assert_eq!(fa.factors, vec![(Poly::parse(&f2, "t^2+t+1").unwrap(), 1)]);
        let f3 = ff_make(3, 1).unwrap();
        let fa = poly_factor(&Poly::parse(&f3, "t^2").unwrap()).unwrap();
        assert_eq!(fa.factors, vec![(Poly::parse(&f3, "t").unwrap(), 2)]);
        assert_eq!(poly_factor(&Poly::zero(&f3)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn factors_inseparable_powers() {
        let f2 = ff_make(2, 1).unwrap();
        let g = Poly::parse(&f2, "(t^2+t+1)^4*(t+1)^3*t^2").unwrap();
        let fa = poly_factor(&g).unwrap();
        let shown: Vec<(String, u32)> = fa.factors.iter().map(|(f, e)| (f.to_string(), *e)).collect();
        assert_eq!(shown, [("t".to_string(), 2), ("t+1".into(), 3), ("t^2+t+1".into(), 4)]);
    }

    fn arb(field: Fq, deg: usize) -> impl Strategy<Value = Poly> {
        let q = field.size();
        proptest::collection::vec(0..q, 1..=deg + 1)
            .prop_map(move |c| Poly::new(&field, c))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn factorization_expands_back_over_f2(f in arb(ff_make(2, 1).unwrap(), 8)) {
            check_factorization(&f);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn factorization_expands_back_over_f9(f in arb(ff_make(3, 2).unwrap(), 4)) {
            check_factorization(&f);
        }

        #[test]
        fn factorization_expands_back_over_f5(f in arb(ff_make(5, 1).unwrap(), 24)) {
            let fa = poly_factor(&f).unwrap();
            prop_assert_eq!(fa.expand(f.field()), f.clone());
            for (g, _) in &fa.factors {
                prop_assert!(is_irreducible(g));
            }
        }
    }

    fn check_factorization(f: &Poly) {
        let fa = poly_factor(f).unwrap();
        assert_eq!(&fa.expand(f.field()), f);
        // certify against the sieve table
        let table: HashSet<Poly> =
            irreducibles_up_to(f.field(), f.degree().unwrap()).into_iter().collect();
        for (g, e) in &fa.factors {
            assert!(table.contains(g), "{g} not in the irreducible table");
            assert_eq!(multiplicity(f, g), *e);
        }
    }
}
