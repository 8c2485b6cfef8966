use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sarith_core::cusps::{
    max_unipotent_member, reduce_to_standard, stabilizer_member, steinitz_invariant, witness_chambers, Chamber, GSpec,
};
use sarith_core::funcfield::{Curve, CurveDesc, FnElem, Place};
use sarith_core::picard::PicOS;
use sarith_core::slgroups::sample::{random_borel_k, random_k_elem, random_sl_k, OsElems};
use sarith_core::slgroups::{elementary, in_sl_os, mobius_action, MatK, ProjPoint, Sampler, SamplerCfg};

const CELLS: [(&str, &[&str]); 9] = [
    ("p1 q=2", &["inf"]),
    ("p1 q=2", &["t^2+t+1"]),
    ("p1 q=2", &["inf", "t^2+t+1"]),
    ("p1 q=2", &["t", "t+1"]),
    ("p1 q=3", &["inf"]),
    ("p1 q=3", &["t^2+1"]),
    ("p1 q=3", &["inf", "t^2+1"]),
    ("p1 q=3", &["t", "t+1"]),
    ("elliptic q=5 a=1 b=1", &["inf"]),
];

fn cell(i: usize) -> (Curve, BTreeSet<Place>, PicOS) {
    let (desc, places) = CELLS[i];
    let c = CurveDesc::parse(desc).unwrap();
    let s: Vec<Place> = places.iter().map(|p| Place::parse(&c, p).unwrap()).collect();
    let pic = PicOS::new(&c, &s).unwrap();
    (c, s.into_iter().collect(), pic)
}

#[test]
fn witnesses_cover_every_class() {
    for i in 0..CELLS.len() {
        let (_, _, pic) = cell(i);
        let invs: BTreeSet<_> =
            witness_chambers(&pic, 2).into_iter().map(|g| steinitz_invariant(&Chamber::new(g), &pic).unwrap()).collect();
        assert_eq!(invs.len() as u64, pic.group().order().unwrap(), "cell {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn invariant_is_a_double_coset_invariant(i in 0usize..9, n in 2usize..4, seed in any::<u64>()) {
        let (c, s, pic) = cell(i);
        let cfg = SamplerCfg { seed, word_length: 4, height: 1, unit_exponent_bound: 1 };
        let mut sm = Sampler::new(&c, n, &s, &cfg).unwrap();
        let gamma = sm.next_gamma();
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let g = random_sl_k(&mut r, &c, n, 1, 3);
        let b = random_borel_k(&mut r, &c, n, 1);
        let before = steinitz_invariant(&Chamber::new(g.clone()), &pic).unwrap();
        let after = steinitz_invariant(&Chamber::new(gamma.mul(&g).mul(&b)), &pic).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn euclidean_collapse(qi in 0usize..2, seed in any::<u64>()) {
        let c = CurveDesc::parse(["p1 q=2", "p1 q=3"][qi]).unwrap();
        let s: BTreeSet<Place> = [Place::Infinity].into();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = loop {
            let (a, b) = (random_k_elem(&mut r, &c, 3), random_k_elem(&mut r, &c, 3));
            if !(a.is_zero() && b.is_zero()) {
                break (a, b);
            }
        };
        let g = reduce_to_standard(&a, &b, &s).unwrap();
        prop_assert!(in_sl_os(&g, &s));
        let one = ProjPoint::new(vec![FnElem::one(&c), FnElem::zero(&c)]).unwrap();
        prop_assert_eq!(mobius_action(&g, &a, &b).unwrap(), one);
    }

    #[test]
    fn unipotent_iff_trivial_torus_part(i in 0usize..9, n in 2usize..4, seed in any::<u64>()) {
        let (c, s, _) = cell(i);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let os = OsElems::new(&c, &s).unwrap();
        let q = c.base().size();
        // an element of B(O_S) conjugated onto a random chamber
        let mut d: Vec<FnElem> = (0..n - 1).map(|_| FnElem::constant(&c, r.gen_range(1..q))).collect();
        let prod = d.iter().fold(FnElem::one(&c), |a, x| a.mul(x));
        d.push(prod.inv().unwrap());
        let mut m = MatK::diag(&d);
        for a in 0..n {
            for b in a + 1..n {
                m = m.mul(&elementary(&c, n, a, b, &os.sample(&mut r, 1)).unwrap());
            }
        }
        let mut sm = Sampler::new(&c, n, &s, &SamplerCfg { seed, word_length: 3, height: 1, unit_exponent_bound: 1 }).unwrap();
        let h = sm.next_gamma();
        let ch = Chamber::new(h.clone());
        let conj = h.inv().unwrap().mul(&m).mul(&h);
        let parts = stabilizer_member(&conj, &ch, &s, &GSpec::SlOs).unwrap();
        prop_assert!(parts.is_some());
        let unip = max_unipotent_member(&conj, &ch, &s, &GSpec::SlOs).unwrap();
        prop_assert_eq!(unip, parts.unwrap().t.is_identity());
    }
}

use rand::Rng;
