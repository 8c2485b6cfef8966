//! Principal congruence subgroups `Gamma_I` of `SL_n(O_S)`, `O_S` containing
//! `F_q[t]`, and the structure of cusp stabilizers.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::cusps::{max_unipotent_member, stabilizer_member, Chamber, GSpec};
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::funcfield::{Curve, FnElem, Place, RatFunc};
use crate::picard::unit_lattice;
use crate::slgroups::{elementary, in_sl_os, MatK, Sampler, SamplerCfg};

fn check_ring(curve: &Curve, s: &BTreeSet<Place>, f: &Poly) -> Result<()> {
    if curve.is_elliptic() || !s.contains(&Place::Infinity) {
        return Err(Error::Unsupported("Gamma_I needs the line with inf in S".into()));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("modulus must be nonconstant".into()));
    }
    Ok(())
}

/// Whether `m` lies in the kernel of `SL_n(O_S) -> SL_n(O_S/(f))`.
///
/// Every entry must reduce modulo `f`; a pole at a factor of `f` is
/// reported as `PoleAtModulus`.
pub fn gamma_i_member(m: &MatK, s: &BTreeSet<Place>, f: &Poly) -> Result<bool> {
    check_ring(m.curve(), s, f)?;
    let n = m.n();
    let mut congruent = true;
    for i in 0..n {
        for j in 0..n {
            let r = m.get(i, j).u().reduce_mod(f).ok_or(Error::PoleAtModulus)?;
            let want = if i == j { Poly::one(f.field()).rem(f) } else { Poly::zero(f.field()) };
            congruent &= r == want;
        }
    }
    Ok(congruent && in_sl_os(m, s))
}

/// Coefficients, lowest first, of `det(m - T I)`.
pub fn charpoly(m: &MatK) -> Vec<FnElem> {
    type KPoly = Vec<FnElem>;
    let curve = m.curve();
    let n = m.n();
    let padd = |a: &KPoly, b: &KPoly, sign: bool| -> KPoly {
        let len = a.len().max(b.len());
        let z = FnElem::zero(curve);
        (0..len)
            .map(|k| {
                let (x, y) = (a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z));
                if sign {
                    x.add(y)
                } else {
                    x.sub(y)
                }
            })
            .collect()
    };
    let pmul = |a: &KPoly, b: &KPoly| -> KPoly {
        let mut out = vec![FnElem::zero(curve); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    };
    let entry = |i: usize, j: usize| -> KPoly {
        if i == j {
            vec![m.get(i, j).clone(), FnElem::one(curve).neg()]
        } else {
            vec![m.get(i, j).clone()]
        }
    };
    fn go(
        rows: &[usize],
        col: usize,
        entry: &dyn Fn(usize, usize) -> Vec<FnElem>,
        padd: &dyn Fn(&Vec<FnElem>, &Vec<FnElem>, bool) -> Vec<FnElem>,
        pmul: &dyn Fn(&Vec<FnElem>, &Vec<FnElem>) -> Vec<FnElem>,
        zero: &FnElem,
    ) -> Vec<FnElem> {
        if rows.len() == 1 {
            return entry(rows[0], col);
        }
        let mut acc = vec![zero.clone()];
        for (k, &i) in rows.iter().enumerate() {
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != i).collect();
            let term = pmul(&entry(i, col), &go(&rest, col + 1, entry, padd, pmul, zero));
            acc = padd(&acc, &term, k % 2 == 0);
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    go(&rows, 0, &entry, &padd, &pmul, &FnElem::zero(curve))
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Whether the characteristic polynomial of `m`, reduced modulo `f`, is
/// `(1 - T)^n`. Holds for every element of `Gamma_I`, which forces its
/// torsion to be `p`-primary.
pub fn charpoly_reduction_check(m: &MatK, f: &Poly) -> Result<bool> {
    if m.curve().is_elliptic() {
        return Err(Error::Unsupported("Gamma_I needs the line".into()));
    }
    let base = f.field();
    let cp = charpoly(m);
    let n = m.n() as u64;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let want = Poly::constant(base, base.from_int_raw(sign * binomial(n, k))).rem(f);
        let got = cp[k as usize].u().reduce_mod(f).ok_or(Error::PoleAtModulus)?;
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random elements of `Gamma_I`: words in the conjugates
/// `g theta_ij(f x) g^-1` with `x` in `O_S` and `g` a short element of
/// `SL_n(O_S)`.
pub struct GammaSampler {
    inner: Sampler,
    conj: Sampler,
    f: FnElem,
    curve: Curve,
    n: usize,
    word_length: usize,
}

impl GammaSampler {
    pub fn new(curve: &Curve, n: usize, s: &BTreeSet<Place>, f: &Poly, cfg: &SamplerCfg) -> Result<GammaSampler> {
        check_ring(curve, s, f)?;
        let inner = Sampler::for_worker(curve, n, s, cfg, 0)?;
        let conj_cfg = SamplerCfg { word_length: cfg.word_length.min(2), height: cfg.height.min(1), ..cfg.clone() };
        let conj = Sampler::for_worker(curve, n, s, &conj_cfg, 1)?;
        let f = FnElem::from_ratfunc(curve, RatFunc::from_poly(f.clone()));
        Ok(GammaSampler { inner, conj, f, curve: curve.clone(), n, word_length: cfg.word_length })
    }

    pub fn next(&mut self) -> MatK {
        let len = self.inner.rng().gen_range(1..=self.word_length.max(1));
        let mut m = MatK::identity(&self.curve, self.n);
        for _ in 0..len {
            let i = self.inner.rng().gen_range(0..self.n);
            let j = (i + self.inner.rng().gen_range(1..self.n)) % self.n;
            let x = self.f.mul(&self.inner.os_elem());
            let mut letter = elementary(&self.curve, self.n, i, j, &x).unwrap();
            if self.inner.rng().gen_bool(0.5) {
                let g = self.conj.next_gamma();
                letter = g.mul(&letter).mul(&g.inv().unwrap());
            }
            m = m.mul(&letter);
        }
        m
    }

    /// An element of `B_n(O_S)`: a diagonal of constants times a random
    /// unitriangular matrix. Lies in `Gamma_I` only when the diagonal is
    /// trivial and the entries above it vanish modulo `f`.
    pub fn next_borel(&mut self) -> MatK {
        let base = self.curve.base().clone();
        let rng = self.inner.rng();
        let mut d: Vec<FnElem> =
            (0..self.n - 1).map(|_| FnElem::constant(&self.curve, rng.gen_range(1..base.size()))).collect();
        let prod = d.iter().fold(FnElem::one(&self.curve), |a, x| a.mul(x));
        d.push(prod.inv().unwrap());
        let mut m = MatK::diag(&d);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mut x = self.inner.os_elem();
                if self.inner.rng().gen_bool(0.7) {
                    x = x.mul(&self.f);
                }
                m = m.mul(&elementary(&self.curve, self.n, i, j, &x).unwrap());
            }
        }
        m
    }
}

/// Stabilizer of the standard chamber in `SL_n(O_S)`: `T(O_S) x U`, with
/// `T(O_S) = (O_S^*)^{n-1} = (F_q^*)^{n-1} x Z^{(n-1) r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabStructure {
    pub torsion_order: u64,
    pub free_rank: usize,
}

pub fn stabilizer_structure(curve: &Curve, s: &[Place], n: usize) -> Result<StabStructure> {
    if !(2..=crate::slgroups::mat::MAX_N).contains(&n) {
        return Err(Error::Invalid(format!("n = {n} outside 2..=4")));
    }
    let units = unit_lattice(curve, s)?;
    Ok(StabStructure { torsion_order: units.torsion.pow(n as u32 - 1), free_rank: (n - 1) * units.rank })
}

/// Over `F_q[t, 1/t]` with `I = (t - 1)`, `diag(t, 1/t, 1, ..)` lies in
/// `Gamma_I` and fixes the standard chamber without being unipotent.
/// True when all three facts check out.
pub fn laurent_counterexample_check(curve: &Curve, n: usize) -> Result<bool> {
    if curve.is_elliptic() {
        return Err(Error::Unsupported("the Laurent ring lives on the line".into()));
    }
    let base = curve.base();
    let t = Poly::var(base);
    let s: BTreeSet<Place> = [Place::Finite(t.clone()), Place::Infinity].into();
    let f = t.sub(&Poly::one(base));
    let tt = FnElem::var(curve);
    let mut d = vec![FnElem::one(curve); n];
    d[0] = tt.clone();
    d[1] = tt.inv().unwrap();
    let m = MatK::diag(&d);
    let g = GSpec::GammaI(f.clone());
    let ch = Chamber::standard(curve, n);
    Ok(gamma_i_member(&m, &s, &f)?
        && stabilizer_member(&m, &ch, &s, &g)?.is_some()
        && !max_unipotent_member(&m, &ch, &s, &g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::CurveDesc;

    fn setup(q: &str) -> (Curve, BTreeSet<Place>) {
        let c = CurveDesc::parse(&format!("p1 q={q}")).unwrap();
        (c, [Place::Infinity].into())
    }

    #[test]
    fn membership_examples() {
        let (c, s) = setup("2");
        let p = |x: &str| Poly::parse(c.base(), x).unwrap();
        let e = |x: &str| FnElem::parse(&c, x).unwrap();
        let f = p("t");
        assert!(gamma_i_member(&MatK::identity(&c, 2), &s, &f).unwrap());
        assert!(gamma_i_member(&elementary(&c, 2, 0, 1, &e("t*(t^2+1)")).unwrap(), &s, &f).unwrap());
        assert!(!gamma_i_member(&elementary(&c, 2, 0, 1, &e("1")).unwrap(), &s, &f).unwrap());
        let pole = elementary(&c, 2, 0, 1, &e("1/t")).unwrap();
        assert_eq!(gamma_i_member(&pole, &s, &f).unwrap_err(), Error::PoleAtModulus);
        assert!(matches!(gamma_i_member(&MatK::identity(&c, 2), &s, &p("1")), Err(Error::Invalid(_))));
    }

    #[test]
    fn charpoly_examples() {
        let (c, _) = setup("3");
        let e = |x: &str| FnElem::parse(&c, x).unwrap();
        let f = Poly::parse(c.base(), "t^2+1").unwrap();
        let id = MatK::identity(&c, 3);
        let cp = charpoly(&id);
        // (1 - T)^3 = 1 - 3T + 3T^2 - T^3 = 1 - T^3 over F_3
        assert_eq!(cp.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1", "0", "0", "2"].map(String::from));
        assert!(charpoly_reduction_check(&id, &f).unwrap());
        let m = elementary(&c, 2, 0, 1, &e("t^2+1")).unwrap();
        let cp = charpoly(&m);
        // (T - 1)^2 = 1 - 2T + T^2
        assert_eq!(cp.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1", "1", "1"].map(String::from));
        assert!(charpoly_reduction_check(&m, &f).unwrap());
        let d = MatK::diag(&[e("2"), e("2")]);
        assert!(!charpoly_reduction_check(&d, &f).unwrap());
    }

    #[test]
    fn structure_examples() {
        let (c2, _) = setup("2");
        let (c3, _) = setup("3");
        let pl = |c: &Curve, x: &str| Place::parse(c, x).unwrap();
        assert_eq!(
            stabilizer_structure(&c2, &[Place::Infinity], 2).unwrap(),
            StabStructure { torsion_order: 1, free_rank: 0 }
        );
        assert_eq!(
            stabilizer_structure(&c3, &[pl(&c3, "t"), Place::Infinity], 2).unwrap(),
            StabStructure { torsion_order: 2, free_rank: 1 }
        );
        assert_eq!(
            stabilizer_structure(&c2, &[Place::Infinity, pl(&c2, "t^2+t+1")], 3).unwrap(),
            StabStructure { torsion_order: 1, free_rank: 2 }
        );
    }

    #[test]
    fn laurent_examples() {
        for q in ["2", "3"] {
            let (c, s) = setup(q);
            assert!(laurent_counterexample_check(&c, 2).unwrap());
            assert!(laurent_counterexample_check(&c, 3).unwrap());
            let tt = FnElem::var(&c);
            let d = MatK::diag(&[tt.clone(), tt.inv().unwrap()]);
            assert!(!in_sl_os(&d, &s));
        }
    }

    #[test]
    fn sampled_members() {
        let (c, s) = setup("2");
        let f = Poly::parse(c.base(), "t^2+t+1").unwrap();
        let mut gs = GammaSampler::new(&c, 2, &s, &f, &SamplerCfg::default()).unwrap();
        for _ in 0..20 {
            let m = gs.next();
            assert!(gamma_i_member(&m, &s, &f).unwrap(), "{m}");
            assert!(charpoly_reduction_check(&m, &f).unwrap());
        }
    }
}
