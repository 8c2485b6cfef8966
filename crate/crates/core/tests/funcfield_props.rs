use std::collections::BTreeSet;

use proptest::prelude::*;
use sarith_core::ff::Poly;
use sarith_core::funcfield::{
    divisor_of, elliptic_places_up_to, elliptic_valuation, os_member, valuation, Curve, CurveDesc, FnElem, Place,
    RatFunc,
};

fn curves() -> Vec<Curve> {
    ["p1 q=2", "p1 q=3", "p1 q=2^2", "elliptic q=5 a=1 b=1", "elliptic q=7 a=3 b=2"]
        .iter()
        .map(|s| CurveDesc::parse(s).unwrap())
        .collect()
}

fn poly(c: &Curve, seed: &[u32]) -> Poly {
    let q = c.base().size();
    Poly::new(c.base(), seed.iter().map(|&x| x % q).collect())
}

fn ratfunc(c: &Curve, num: &[u32], den: &[u32]) -> RatFunc {
    let d = poly(c, den);
    let d = if d.is_zero() { Poly::one(c.base()) } else { d };
    RatFunc::new(poly(c, num), d)
}

fn elem(c: &Curve, s: &[Vec<u32>; 4]) -> FnElem {
    let u = ratfunc(c, &s[0], &s[1]);
    if c.is_elliptic() {
        FnElem::new(c, u, ratfunc(c, &s[2], &s[3]))
    } else {
        FnElem::from_ratfunc(c, u)
    }
}

fn coeffs() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 0..5)
}

fn seed() -> impl Strategy<Value = [Vec<u32>; 4]> {
    [coeffs(), coeffs(), coeffs(), coeffs()]
}

fn nonzero(c: &Curve, s: &[Vec<u32>; 4]) -> Option<FnElem> {
    let e = elem(c, s);
    (!e.is_zero()).then_some(e)
}

/// A handful of places of low degree, O first.
fn some_places(c: &Curve) -> Vec<Place> {
    if c.is_elliptic() {
        let all = elliptic_places_up_to(c, 2).unwrap();
        let mut pick: Vec<Place> = vec![all[0].clone(), all[1].clone(), all[2].clone()];
        pick.extend(all.iter().filter(|p| p.degree() == 2).take(2).cloned());
        pick
    } else {
        let base = c.base();
        let mut v = vec![Place::Infinity];
        v.extend(sarith_core::ff::irreducibles_up_to(base, 2).into_iter().take(4).map(Place::Finite));
        v
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn principal_divisors_have_degree_zero(ci in 0usize..5, s in seed()) {
        let c = &curves()[ci];
        if let Some(x) = nonzero(c, &s) {
            let d = divisor_of(&x).unwrap();
            prop_assert_eq!(d.degree(), 0);
        }
    }

    #[test]
    fn divisor_is_multiplicative(ci in 0usize..5, s in seed(), t in seed()) {
        let c = &curves()[ci];
        if let (Some(x), Some(y)) = (nonzero(c, &s), nonzero(c, &t)) {
            let lhs = divisor_of(&x.mul(&y)).unwrap();
            prop_assert_eq!(lhs, divisor_of(&x).unwrap().add(&divisor_of(&y).unwrap()));
            prop_assert!(divisor_of(&x.inv().unwrap()).unwrap() == divisor_of(&x).unwrap().neg());
        }
    }

    #[test]
    fn ultrametric(ci in 0usize..5, s in seed(), t in seed()) {
        let c = &curves()[ci];
        if let (Some(x), Some(y)) = (nonzero(c, &s), nonzero(c, &t)) {
            for p in some_places(c) {
                let (a, b) = (valuation(&x, &p).unwrap(), valuation(&y, &p).unwrap());
                prop_assert_eq!(valuation(&x.mul(&y), &p).unwrap(), a + b);
                let sum = x.add(&y);
                if !sum.is_zero() {
                    let v = valuation(&sum, &p).unwrap();
                    prop_assert!(v >= a.min(b));
                    if a != b {
                        prop_assert_eq!(v, a.min(b));
                    }
                }
            }
        }
    }

    #[test]
    fn s_integers_form_a_ring(ci in 0usize..5, s in seed(), t in seed(), mask in 0u8..32) {
        let c = &curves()[ci];
        let places = some_places(c);
        let set: BTreeSet<Place> = places.iter().enumerate()
            .filter(|(i, _)| *i == 0 || mask & (1 << i) != 0)
            .map(|(_, p)| p.clone()).collect();
        let x = elem(c, &s);
        let y = elem(c, &t);
        if os_member(&x, &set) && os_member(&y, &set) {
            prop_assert!(os_member(&x.add(&y), &set));
            prop_assert!(os_member(&x.mul(&y), &set));
            prop_assert!(os_member(&x.neg(), &set));
        }
        prop_assert!(os_member(&FnElem::constant(c, 1), &set));
        // membership agrees with the divisor outside S
        if !x.is_zero() {
            let d = divisor_of(&x).unwrap();
            let expect = d.iter().all(|(p, &k)| k >= 0 || set.contains(p));
            prop_assert_eq!(os_member(&x, &set), expect);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_valuation_agrees(ci in 3usize..5, s in seed()) {
        let c = &curves()[ci];
        if let Some(x) = nonzero(c, &s) {
            for p in some_places(c) {
                prop_assert_eq!(elliptic_valuation(&x, &p).unwrap(), valuation(&x, &p).unwrap());
            }
        }
    }
}
