//! The S-unit group `O_S^* = F_q^* x Z^r`.

use serde::Serialize;

use super::pic::PicCurve;
use super::snf::{hnf, left_kernel, Mat};
use crate::error::{Error, Result};
use crate::funcfield::{Curve, FnElem, Place, RatFunc};

#[derive(Clone, Debug)]
pub struct UnitLattice {
    /// `|F_q^*|`.
    pub torsion: u64,
    pub rank: usize,
    /// `S` in the order used by the kernel vectors: finite places, then `inf`.
    pub places: Vec<Place>,
    /// Hermite basis of the kernel of `Z^S -> Pic(C)`.
    pub kernel: Mat,
    /// Explicit units on the line; `None` on `E`.
    pub generators: Option<Vec<FnElem>>,
}

#[derive(Serialize)]
pub struct UnitReport {
    pub torsion: u64,
    pub rank: usize,
    pub places: Vec<String>,
    pub kernel: Mat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl UnitLattice {
    pub fn report(&self, curve: &Curve) -> UnitReport {
        UnitReport {
            torsion: self.torsion,
            rank: self.rank,
            places: self.places.iter().map(|p| p.render(curve)).collect(),
            kernel: self.kernel.clone(),
            generators: self.generators.as_ref().map(|g| g.iter().map(|f| f.to_string()).collect()),
        }
    }
}

/// Orders `S` as finite places by degree, then the infinite place.
pub fn order_places(s: &[Place]) -> Vec<Place> {
    let mut v: Vec<Place> = s.to_vec();
    v.sort_by_key(|p| (p.is_infinity(), p.degree(), p.clone()));
    v.dedup();
    v
}

pub fn unit_lattice(curve: &Curve, s: &[Place]) -> Result<UnitLattice> {
    if s.is_empty() {
        return Err(Error::Invalid("S must be nonempty".into()));
    }
    let pic = PicCurve::new(curve)?;
    let places = order_places(s);
    // x in Z^S is a unit divisor iff (x A, y) is in the left kernel of [A; R]
    let mut stacked: Mat = places.iter().map(|p| pic.place_vector(p)).collect::<Result<_>>()?;
    stacked.extend(pic.relations().iter().cloned());
    let k = places.len();
    let proj: Mat = left_kernel(&stacked).into_iter().map(|row| row[..k].to_vec()).collect();
    let kernel = hnf(&proj);
    let rank = kernel.len();
    if rank + 1 != k {
        return Err(Error::InvariantViolation(format!("unit rank {rank} differs from #S - 1 = {}", k - 1)));
    }
    let generators = (!curve.is_elliptic()).then(|| {
        kernel
            .iter()
            .map(|x| {
                let mut f = RatFunc::one(curve.base());
                for (p, &e) in places.iter().zip(x) {
                    if let Place::Finite(h) = p {
                        f = f.mul(&RatFunc::from_poly(h.clone()).pow(e));
                    }
                }
                FnElem::from_ratfunc(curve, f)
            })
            .collect()
    });
    Ok(UnitLattice { torsion: curve.base().size() as u64 - 1, rank, places, kernel, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{divisor_of, CurveDesc};

    #[test]
    fn examples() {
        let c2 = CurveDesc::parse("p1 q=2").unwrap();
        let u = unit_lattice(&c2, &[Place::Infinity]).unwrap();
        assert_eq!((u.torsion, u.rank), (1, 0));
        let c3 = CurveDesc::parse("p1 q=3").unwrap();
        let u = unit_lattice(&c3, &[Place::parse(&c3, "t").unwrap(), Place::Infinity]).unwrap();
        assert_eq!((u.torsion, u.rank), (2, 1));
        assert_eq!(u.generators.unwrap()[0].to_string(), "t");
        let p = Place::parse(&c2, "t^2+t+1").unwrap();
        let u = unit_lattice(&c2, &[Place::Infinity, p]).unwrap();
        assert_eq!(u.rank, 1);
        assert_eq!(u.generators.as_ref().unwrap()[0].to_string(), "t^2+t+1");
    }

    #[test]
    fn elliptic_units_are_supported_on_s() {
        let e = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let s = [Place::Infinity, Place::parse(&e, "pt(0,1)@1").unwrap()];
        let u = unit_lattice(&e, &s).unwrap();
        assert_eq!(u.rank, 1);
        // (0,1) has order dividing 9, so the generator is (9k)(0,1) - (9k) O up to sign
        let v = &u.kernel[0];
        assert_eq!(v[0] + v[1], 0);
        assert_eq!(v[0].abs() % 3, 0);
        // x - 0... the function x has divisor (0,1) + (0,4) - 2 O, not supported on S
        let x = FnElem::var(&e);
        assert!(divisor_of(&x).unwrap().support().any(|p| !s.contains(p)));
    }
}
