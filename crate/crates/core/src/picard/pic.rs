//! `Pic(C)`, `Pic(O_S)` and classes of fractional `O_S`-ideals.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::group::{FinAbGroup, GrpElem, Presentation};
use crate::error::{Error, Result};
use crate::ff::FieldDesc;
use crate::funcfield::elliptic::{group_over, orbit_sum, points_over};
use crate::funcfield::{divisor_of, Curve, Divisor, EcPoint, FnElem, Place};

/// Largest point group we are willing to enumerate.
pub const POINT_BOUND: usize = 10_000;

/// `E(F_p)` with coordinates on a greedily chosen generating set.
#[derive(Clone, Debug)]
pub struct PointGroup {
    pub points: Vec<EcPoint<u32>>,
    pub gens: Vec<EcPoint<u32>>,
    pub relations: Vec<Vec<i64>>,
    coords: HashMap<EcPoint<u32>, Vec<i64>>,
}

impl PointGroup {
    pub fn new(curve: &Curve) -> Result<PointGroup> {
        let p = curve.base().characteristic() as usize;
        // Hasse: |E(F_p)| <= p + 1 + 2 sqrt(p)
        if p + 1 + 2 * (p as f64).sqrt().ceil() as usize > POINT_BOUND {
            return Err(Error::BudgetExceeded(format!("E(F_{p}) may exceed {POINT_BOUND} points")));
        }
        let field = FieldDesc::build(p as u64, 1)?;
        let g = group_over(curve, &field);
        let points = points_over(curve, &field);
        let mut coords: HashMap<EcPoint<u32>, Vec<i64>> = HashMap::new();
        coords.insert(EcPoint::Infinity, vec![]);
        let mut gens = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        while coords.len() < points.len() {
            let new = points.iter().find(|q| !coords.contains_key(*q)).unwrap().clone();
            let k = gens.len();
            // smallest m with m*new in the current span
            let mut m = 1;
            let mut acc = new.clone();
            while !coords.contains_key(&acc) {
                acc = g.add(&acc, &new);
                m += 1;
            }
            let mut rel: Vec<i64> = coords[&acc].iter().map(|c| -c).collect();
            rel.push(m);
            for r in relations.iter_mut() {
                r.push(0);
            }
            relations.push(rel);
            let old: Vec<(EcPoint<u32>, Vec<i64>)> = coords.drain().collect();
            for (pt, v) in old {
                let mut cur = pt;
                for j in 0..m {
                    let mut w = v.clone();
                    w.resize(k, 0);
                    w.push(j);
                    coords.insert(cur.clone(), w);
                    cur = g.add(&cur, &new);
                }
            }
            gens.push(new);
        }
        for v in coords.values_mut() {
            v.resize(gens.len(), 0);
        }
        Ok(PointGroup { points, gens, relations, coords })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// Coordinates on the generators (not reduced by the relations).
    pub fn vector(&self, pt: &EcPoint<u32>) -> &[i64] {
        &self.coords[pt]
    }

    pub fn structure(&self) -> FinAbGroup {
        Presentation::new(self.gens.len(), &self.relations).group
    }
}

/// `Pic(C)` as `Z^n / R`, generator 0 being the class of `inf` (or `O`).
#[derive(Clone, Debug)]
pub struct PicCurve {
    curve: Curve,
    points: Option<PointGroup>,
    relations: Vec<Vec<i64>>,
    pic0: Presentation,
    group: FinAbGroup,
}

impl PicCurve {
    pub fn new(curve: &Curve) -> Result<PicCurve> {
        let (points, pic0) = if curve.is_elliptic() {
            let pg = PointGroup::new(curve)?;
            let pic0 = Presentation::new(pg.gens.len(), &pg.relations);
            (Some(pg), pic0)
        } else {
            (None, Presentation::new(0, &[]))
        };
        let relations: Vec<Vec<i64>> = points
            .iter()
            .flat_map(|pg| pg.relations.iter())
            .map(|r| std::iter::once(0).chain(r.iter().copied()).collect())
            .collect();
        let group = FinAbGroup { invariant_factors: pic0.group.invariant_factors.clone(), free_rank: 1 };
        Ok(PicCurve { curve: curve.clone(), points, relations, pic0, group })
    }

    /// Canonical coordinates `(Pic^0 part, degree)` of a generator vector.
    pub fn class(&self, x: &[i64]) -> GrpElem {
        let mut c = self.pic0.class(&x[1..]).coords;
        c.push(x[0]);
        GrpElem { coords: c }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn points(&self) -> Option<&PointGroup> {
        self.points.as_ref()
    }

    pub fn gens(&self) -> usize {
        1 + self.pic0.gens
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// `(deg P, P - deg(P) O)` in generator coordinates.
    pub fn place_vector(&self, place: &Place) -> Result<Vec<i64>> {
        let deg = place.degree() as i64;
        match &self.points {
            None => match place {
                Place::Point { .. } => Err(Error::Invalid("elliptic place on the projective line".into())),
                _ => Ok(vec![deg]),
            },
            Some(pg) => {
                let q = orbit_sum(&self.curve, place)?;
                let mut v = vec![deg];
                v.extend_from_slice(pg.vector(&q));
                Ok(v)
            }
        }
    }

    pub fn place_class(&self, place: &Place) -> Result<GrpElem> {
        Ok(self.class(&self.place_vector(place)?))
    }

    pub fn divisor_vector(&self, d: &Divisor) -> Result<Vec<i64>> {
        let mut acc = vec![0; self.gens()];
        for (p, &k) in d.iter() {
            for (a, b) in acc.iter_mut().zip(self.place_vector(p)?) {
                *a += k * b;
            }
        }
        Ok(acc)
    }
}

/// `Pic(C)` with its place-class map.
pub fn pic_curve(curve: &Curve) -> Result<PicCurve> {
    PicCurve::new(curve)
}

/// `Pic(O_S) = Pic(C) / <classes of S>`.
#[derive(Clone, Debug)]
pub struct PicOS {
    pic: PicCurve,
    s: BTreeSet<Place>,
    pres: Presentation,
}

impl PicOS {
    pub fn new(curve: &Curve, s: &[Place]) -> Result<PicOS> {
        PicOS::over(PicCurve::new(curve)?, s)
    }

    pub fn over(pic: PicCurve, s: &[Place]) -> Result<PicOS> {
        if s.is_empty() {
            return Err(Error::Invalid("S must be nonempty".into()));
        }
        let mut rel = pic.relations.clone();
        for p in s {
            rel.push(pic.place_vector(p)?);
        }
        let pres = Presentation::new(pic.gens(), &rel);
        Ok(PicOS { pic, s: s.iter().cloned().collect(), pres })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.pres.group
    }

    pub fn curve(&self) -> &Curve {
        self.pic.curve()
    }

    pub fn pic_curve(&self) -> &PicCurve {
        &self.pic
    }

    pub fn s(&self) -> &BTreeSet<Place> {
        &self.s
    }

    pub fn place_class(&self, place: &Place) -> Result<GrpElem> {
        Ok(self.pres.class(&self.pic.place_vector(place)?))
    }

    pub fn divisor_class(&self, d: &Divisor) -> Result<GrpElem> {
        Ok(self.pres.class(&self.pic.divisor_vector(d)?))
    }

    /// Class of `sum_{P not in S} min_i nu_P(g_i) P`, i.e. of the fractional
    /// ideal generated by `gens`.
    pub fn ideal_class(&self, gens: &[FnElem]) -> Result<GrpElem> {
        self.divisor_class(&self.ideal_divisor(gens)?)
    }

    pub fn ideal_divisor(&self, gens: &[FnElem]) -> Result<Divisor> {
        let divs: Vec<Divisor> = gens.iter().filter(|g| !g.is_zero()).map(divisor_of).collect::<Result<_>>()?;
        if divs.is_empty() {
            return Err(Error::ZeroInput);
        }
        let support: BTreeSet<&Place> = divs.iter().flat_map(|d| d.support()).filter(|p| !self.s.contains(p)).collect();
        Ok(Divisor::from_terms(
            support.into_iter().map(|p| (p.clone(), divs.iter().map(|d| d.get(p)).min().unwrap())),
        ))
    }
}

pub fn pic_os(curve: &Curve, s: &[Place]) -> Result<PicOS> {
    PicOS::new(curve, s)
}

/// `gcd` of the degrees of `S`: the order of `Pic(O_S)` on the line.
pub fn gcd_oracle(degrees: &[u64]) -> u64 {
    degrees.iter().fold(0, |a, &b| num_integer_gcd(a, b))
}

fn num_integer_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_integer_gcd(b, a % b)
    }
}

/// `|Pic(O_S)|` on `E` by enumerating the subgroup generated by the classes
/// of `S` inside `Z/(N d) + E(F_p)`, where `N = |E(F_p)|` and `d` is the
/// degree gcd of `S`. Independent of the Smith form.
pub fn elliptic_quotient_order_by_cosets(curve: &Curve, s: &[Place]) -> Result<u64> {
    let p = curve.base().characteristic() as u64;
    let field = FieldDesc::build(p, 1)?;
    let g = group_over(curve, &field);
    let n = points_over(curve, &field).len() as u64;
    let d = gcd_oracle(&s.iter().map(|pl| pl.degree() as u64).collect::<Vec<_>>());
    let modulus = (n * d) as i64;
    let gens: Vec<(i64, EcPoint<u32>)> =
        s.iter().map(|pl| Ok((pl.degree() as i64 % modulus, orbit_sum(curve, pl)?))).collect::<Result<_>>()?;
    let start = (0i64, EcPoint::Infinity);
    let mut seen: HashSet<(i64, EcPoint<u32>)> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((k, q)) = queue.pop_front() {
        for (dk, dq) in &gens {
            let next = ((k + dk).rem_euclid(modulus), g.add(&q, dq));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(n * n * d / seen.len() as u64)
}

/// Element orders of `E(F_p)`, for structure cross-checks.
pub fn point_order_histogram(curve: &Curve) -> Result<BTreeMap<u64, usize>> {
    let p = curve.base().characteristic() as u64;
    let field = FieldDesc::build(p, 1)?;
    let g = group_over(curve, &field);
    let mut out = BTreeMap::new();
    for pt in points_over(curve, &field) {
        let mut k = 1;
        let mut acc = pt.clone();
        while acc != EcPoint::Infinity {
            acc = g.add(&acc, &pt);
            k += 1;
        }
        *out.entry(k).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::CurveDesc;

    fn e5() -> Curve {
        CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap()
    }

    #[test]
    fn pic_of_curves() {
        let c = CurveDesc::parse("p1 q=2").unwrap();
        let pic = pic_curve(&c).unwrap();
        assert_eq!(pic.group(), &FinAbGroup::integers());
        assert_eq!(pic.place_class(&Place::parse(&c, "t^2+t+1").unwrap()).unwrap().coords, vec![2]);
        let pic = pic_curve(&e5()).unwrap();
        assert_eq!(pic.group().free_rank, 1);
        let torsion: u64 = pic.group().invariant_factors.iter().product();
        assert_eq!(torsion, 9);
        let o = pic.place_class(&Place::Infinity).unwrap();
        // O maps to (identity, 1): the degree coordinate is last
        assert!(o.coords[..o.coords.len() - 1].iter().all(|&c| c == 0));
        assert_eq!(o.coords.last(), Some(&1));
    }

    #[test]
    fn structure_from_orders() {
        for desc in ["elliptic q=5 a=1 b=1", "elliptic q=7 a=3 b=2", "elliptic q=5 a=2 b=0", "elliptic q=11 a=1 b=0"] {
            let c = CurveDesc::parse(desc).unwrap();
            let pg = PointGroup::new(&c).unwrap();
            let st = pg.structure();
            let hist = point_order_histogram(&c).unwrap();
            let exponent = *hist.keys().max().unwrap();
            assert_eq!(st.order().unwrap() as usize, pg.order(), "{desc}");
            assert_eq!(st.invariant_factors.last().copied().unwrap_or(1), exponent, "{desc}");
        }
    }

    #[test]
    fn pic_os_examples() {
        let c = CurveDesc::parse("p1 q=2").unwrap();
        assert_eq!(pic_os(&c, &[Place::Infinity]).unwrap().group(), &FinAbGroup::trivial());
        let p = Place::parse(&c, "t^2+t+1").unwrap();
        let g = pic_os(&c, &[p.clone()]).unwrap();
        assert_eq!(g.group().invariant_factors, vec![2]);
        let e = e5();
        let g = pic_os(&e, &[Place::Infinity]).unwrap();
        assert_eq!(g.group().order(), Some(9));
        assert_eq!(elliptic_quotient_order_by_cosets(&e, &[Place::Infinity]).unwrap(), 9);
    }

    #[test]
    fn ideal_class_examples() {
        let c = CurveDesc::parse("p1 q=2").unwrap();
        let g = pic_os(&c, &[Place::Infinity]).unwrap();
        assert!(g.ideal_class(&[FnElem::one(&c)]).unwrap().is_identity());
        let gens = [FnElem::parse(&c, "t").unwrap(), FnElem::parse(&c, "t+1").unwrap()];
        assert!(g.ideal_class(&gens).unwrap().is_identity());
        let p = Place::parse(&c, "t^2+t+1").unwrap();
        let g = pic_os(&c, &[p]).unwrap();
        let gens = [FnElem::parse(&c, "t/(t^2+t+1)").unwrap(), FnElem::parse(&c, "(t+1)/(t^2+t+1)").unwrap()];
        assert_eq!(g.ideal_class(&gens).unwrap().coords, vec![1]);
        assert_eq!(g.ideal_class(&[FnElem::zero(&c)]).unwrap_err(), Error::ZeroInput);
    }
}
