use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sarith_core::funcfield::{Curve, CurveDesc, FnElem, Place};
use sarith_core::slgroups::proj::act;
use sarith_core::slgroups::sample::{random_borel_k, random_k_unit, random_sl_k};
use sarith_core::slgroups::{borel_factor, in_sl_os, mobius_action, ProjPoint, Sampler, SamplerCfg};

fn curve(i: usize) -> Curve {
    let specs = ["p1 q=2", "p1 q=3", "elliptic q=5 a=1 b=1"];
    CurveDesc::parse(specs[i]).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn determinant_is_preserved(ci in 0usize..3, n in 2usize..5, seed in any::<u64>()) {
        let c = curve(ci);
        let mut r = rng(seed);
        let a = random_sl_k(&mut r, &c, n, 1, 3);
        let b = random_sl_k(&mut r, &c, n, 1, 3);
        prop_assert!(a.mul(&b).det().is_one());
        let ai = a.inv().unwrap();
        prop_assert!(ai.det().is_one());
        prop_assert!(a.mul(&ai).is_identity());
    }

    #[test]
    fn borel_parts(ci in 0usize..3, n in 2usize..5, seed in any::<u64>()) {
        let c = curve(ci);
        let mut r = rng(seed);
        let a = random_borel_k(&mut r, &c, n, 1);
        let b = random_borel_k(&mut r, &c, n, 1);
        let (pa, pb) = (borel_factor(&a).unwrap(), borel_factor(&b).unwrap());
        prop_assert_eq!(pa.t.mul(&pa.u), a.clone());
        for i in 0..n {
            prop_assert!(pa.u.get(i, i).is_one());
        }
        let pab = borel_factor(&a.mul(&b)).unwrap();
        prop_assert_eq!(pab.t, pa.t.mul(&pb.t));
    }

    #[test]
    fn action_law(ci in 0usize..3, seed in any::<u64>()) {
        let c = curve(ci);
        let mut r = rng(seed);
        let m1 = random_sl_k(&mut r, &c, 2, 1, 3);
        let m2 = random_sl_k(&mut r, &c, 2, 1, 3);
        let (a, b) = (random_k_unit(&mut r, &c, 1), random_k_unit(&mut r, &c, 1));
        let lhs = act(&m1, &mobius_action(&m2, &a, &b).unwrap());
        let rhs = mobius_action(&m1.mul(&m2), &a, &b).unwrap();
        prop_assert!(lhs.cross_equal(&rhs));
        prop_assert_eq!(&lhs, &rhs);
        let l = random_k_unit(&mut r, &c, 1);
        let direct = act(&m1, &ProjPoint::new(vec![a.clone(), b.clone()]).unwrap());
        prop_assert_eq!(mobius_action(&m1, &a.mul(&l), &b.mul(&l)).unwrap(), direct);
    }
}

#[test]
fn sampled_matrices_are_s_integral() {
    let configs: Vec<(Curve, Vec<&str>)> = vec![
        (curve(0), vec!["inf"]),
        (curve(0), vec!["t^2+t+1"]),
        (curve(1), vec!["t", "inf"]),
        (curve(2), vec!["inf"]),
        (curve(2), vec!["inf", "pt(0,1)@1", "pt(0,4)@1"]),
    ];
    for (c, s) in configs {
        let s: BTreeSet<Place> = s.iter().map(|p| Place::parse(&c, p).unwrap()).collect();
        for n in 2..=3 {
            let mut sm = Sampler::new(&c, n, &s, &SamplerCfg { seed: 7, ..SamplerCfg::default() }).unwrap();
            for _ in 0..1000 / 2 {
                let m = sm.next_gamma();
                assert!(in_sl_os(&m, &s), "{m}");
            }
        }
    }
    let c = curve(0);
    let one = FnElem::one(&c);
    assert!(mobius_action(&sarith_core::slgroups::MatK::identity(&c, 2), &one, &one).is_ok());
}
