//! Cusps of `SL_n(O_S)`: chambers at infinity, their Steinitz invariants
//! in `Pic(O_S)^{n-1}`, and their stabilizers.

pub mod census;
pub mod invariant;
pub mod stab;

pub use census::{class_witnesses, cusp_census, witness_chambers, Census, Found};
pub use invariant::{leading_minors, steinitz_invariant, Chamber, CuspInvariant};
pub use stab::{in_group, max_unipotent_member, reduce_to_standard, stabilizer_member, GSpec};

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::funcfield::{CurveDesc, FnElem, Place};
    use crate::picard::PicOS;
    use crate::slgroups::{elementary, MatK, SamplerCfg};

    fn line(q: &str, places: &[&str]) -> (crate::funcfield::Curve, PicOS) {
        let c = CurveDesc::parse(&format!("p1 q={q}")).unwrap();
        let s: Vec<Place> = places.iter().map(|p| Place::parse(&c, p).unwrap()).collect();
        let pic = PicOS::new(&c, &s).unwrap();
        (c, pic)
    }

    #[test]
    fn invariant_examples() {
        let (c, pic) = line("2", &["t^2+t+1"]);
        let f = |s: &str| FnElem::parse(&c, s).unwrap();
        assert!(steinitz_invariant(&Chamber::standard(&c, 2), &pic).unwrap().is_trivial());
        let g = census::complete_column(&f("t/(t^2+t+1)"), &f("(t+1)/(t^2+t+1)"));
        let inv = steinitz_invariant(&Chamber::new(g), &pic).unwrap();
        assert!(!inv.is_trivial());
        assert_eq!(inv.coords(), vec![vec![1]]);
        // a product of elementary matrices over O_S
        let g3 = elementary(&c, 3, 0, 1, &f("1/(t^2+t+1)")).unwrap()
            .mul(&elementary(&c, 3, 2, 0, &f("t/(t^2+t+1)")).unwrap());
        assert!(steinitz_invariant(&Chamber::new(g3), &pic).unwrap().is_trivial());
    }

    #[test]
    fn census_examples() {
        let cfg = SamplerCfg::default();
        for (q, places, want) in [("2", vec!["inf"], 1), ("2", vec!["t^2+t+1"], 2), ("3", vec!["t^2+1"], 2)] {
            let (_, pic) = line(q, &places);
            let census = cusp_census(&pic, 2, 50, &cfg, &[]).unwrap();
            assert_eq!(census.distinct(), want, "q={q} S={places:?}");
            assert_eq!(census.expected, want as u64);
        }
        // n = 3 with |Pic| = 2 gives four classes
        let (_, pic) = line("2", &["t^2+t+1"]);
        let census = cusp_census(&pic, 3, 30, &cfg, &[]).unwrap();
        assert_eq!(census.distinct(), 4);
    }

    #[test]
    fn euclidean_examples() {
        let c = CurveDesc::parse("p1 q=3").unwrap();
        let f = |s: &str| FnElem::parse(&c, s).unwrap();
        let s: BTreeSet<Place> = [Place::Infinity].into();
        assert!(reduce_to_standard(&f("1"), &f("0"), &s).unwrap().is_identity());
        let g = reduce_to_standard(&f("t"), &f("1"), &s).unwrap();
        assert_eq!(g.to_string(), "[[0, 1], [2, t]]");
        let g = reduce_to_standard(&f("t^2"), &f("t^2+1"), &s).unwrap();
        assert!(crate::slgroups::in_sl_os(&g, &s));
        let bad: BTreeSet<Place> = [Place::Infinity, Place::parse(&c, "t").unwrap()].into();
        assert!(matches!(reduce_to_standard(&f("t"), &f("1"), &bad), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let c = CurveDesc::parse("p1 q=3").unwrap();
        let f = |s: &str| FnElem::parse(&c, s).unwrap();
        let s: BTreeSet<Place> = [Place::Infinity].into();
        let std = Chamber::standard(&c, 2);
        let u = elementary(&c, 2, 0, 1, &f("t^2+1")).unwrap();
        let d = MatK::diag(&[f("2"), f("2")]);
        let parts = stabilizer_member(&d.mul(&u), &std, &s, &GSpec::SlOs).unwrap().unwrap();
        assert!(!parts.t.is_identity());
        assert!(max_unipotent_member(&u, &std, &s, &GSpec::SlOs).unwrap());
        assert!(!max_unipotent_member(&d, &std, &s, &GSpec::SlOs).unwrap());
        let low = elementary(&c, 2, 1, 0, &f("t")).unwrap();
        assert!(stabilizer_member(&low, &std, &s, &GSpec::SlOs).unwrap().is_none());
        // a conjugated chamber is stabilized by the conjugated unipotent
        let g = elementary(&c, 2, 1, 0, &f("t")).unwrap();
        let ch = Chamber::new(g.clone());
        let m = g.inv().unwrap().mul(&u).mul(&g);
        assert!(max_unipotent_member(&m, &ch, &s, &GSpec::SlOs).unwrap());
        // not S-integral
        let frac = elementary(&c, 2, 0, 1, &f("1/t")).unwrap();
        assert!(stabilizer_member(&frac, &std, &s, &GSpec::SlOs).unwrap().is_none());
    }
}
