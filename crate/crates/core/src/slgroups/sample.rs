//! Reproducible random elements of `O_S`, `k`, `SL_n(O_S)` and `SL_n(k)`.
//!
//! Elements of `SL_n(O_S)` are random words over the elementary matrices
//! `theta_ij(x)` with `x` in `O_S` of bounded height, mixed with diagonal
//! units `diag(.., u, u^-1, ..)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mat::{elementary, MatK};
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::funcfield::{places_above, Curve, FnElem, Place, RatFunc};
use crate::picard::unit_lattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerCfg {
    pub seed: u64,
    pub word_length: usize,
    /// Maximal degree of numerators and denominators of word parameters.
    pub height: usize,
    pub unit_exponent_bound: u32,
}

impl Default for SamplerCfg {
    fn default() -> Self {
        SamplerCfg { seed: 42, word_length: 8, height: 2, unit_exponent_bound: 2 }
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, curve: &Curve, max_deg: usize) -> Poly {
    let q = curve.base().size();
    Poly::new(curve.base(), (0..=max_deg).map(|_| rng.gen_range(0..q)).collect())
}

fn nonzero_poly<R: Rng>(rng: &mut R, curve: &Curve, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(rng, curve, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random element of `k` of height at most `h` (possibly zero).
pub fn random_k_elem<R: Rng>(rng: &mut R, curve: &Curve, h: usize) -> FnElem {
    let part = |rng: &mut R| {
        let d = rng.gen_range(0..=h);
        RatFunc::new(random_poly(rng, curve, h), nonzero_poly(rng, curve, d))
    };
    let u = part(rng);
    if curve.is_elliptic() && rng.gen_bool(0.5) {
        let v = part(rng);
        FnElem::new(curve, u, v)
    } else {
        FnElem::from_ratfunc(curve, u)
    }
}

pub fn random_k_unit<R: Rng>(rng: &mut R, curve: &Curve, h: usize) -> FnElem {
    loop {
        let x = random_k_elem(rng, curve, h);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Generates elements of `O_S` of bounded height.
#[derive(Clone, Debug)]
pub struct OsElems {
    curve: Curve,
    has_inf: bool,
    // polynomials allowed in denominators, with degrees
    dens: Vec<Poly>,
}

impl OsElems {
    pub fn new(curve: &Curve, s: &BTreeSet<Place>) -> Result<OsElems> {
        let has_inf = s.contains(&Place::Infinity);
        if curve.is_elliptic() && !has_inf {
            return Err(Error::Unsupported("elliptic sampling needs O in S".into()));
        }
        let mut dens: Vec<Poly> = Vec::new();
        for p in s {
            if let Some(h) = p.under() {
                // on E a fibre may divide a denominator only if all of it lies in S
                let whole = !curve.is_elliptic() || places_above(curve, h).iter().all(|q| s.contains(q));
                if whole && !dens.contains(h) {
                    dens.push(h.clone());
                }
            }
        }
        if !has_inf && dens.is_empty() {
            return Err(Error::Invalid("S must be nonempty".into()));
        }
        Ok(OsElems { curve: curve.clone(), has_inf, dens })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R, h: usize) -> FnElem {
        let c = &self.curve;
        let mut den = Poly::one(c.base());
        let mut room = h;
        for d in &self.dens {
            let dd = d.degree().unwrap();
            while dd <= room && rng.gen_bool(0.5) {
                den = den.mul(d);
                room -= dd;
            }
        }
        let num_deg = if self.has_inf { h } else { den.degree().unwrap() };
        let u = RatFunc::new(random_poly(rng, c, num_deg), den.clone());
        if c.is_elliptic() && rng.gen_bool(0.5) {
            // y has a pole of order 3 at O, which lies in S
            let v = RatFunc::new(random_poly(rng, c, h.saturating_sub(1)), den);
            FnElem::new(c, u, v)
        } else {
            FnElem::from_ratfunc(c, u)
        }
    }
}

/// Seeded stream of `SL_n(O_S)` elements.
pub struct Sampler {
    rng: ChaCha8Rng,
    cfg: SamplerCfg,
    curve: Curve,
    n: usize,
    elems: OsElems,
    units: Vec<FnElem>,
}

impl Sampler {
    pub fn new(curve: &Curve, n: usize, s: &BTreeSet<Place>, cfg: &SamplerCfg) -> Result<Sampler> {
        Sampler::for_worker(curve, n, s, cfg, 0)
    }

    /// Independent stream number `worker` for the same seed.
    pub fn for_worker(curve: &Curve, n: usize, s: &BTreeSet<Place>, cfg: &SamplerCfg, worker: u64) -> Result<Sampler> {
        if !(2..=super::mat::MAX_N).contains(&n) {
            return Err(Error::Invalid(format!("n = {n} outside 2..=4")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(worker);
        let elems = OsElems::new(curve, s)?;
        let base = curve.base();
        let mut units = Vec::new();
        if base.size() > 2 {
            units.push(FnElem::constant(curve, base.generator()));
        }
        if !curve.is_elliptic() {
            let s: Vec<Place> = s.iter().cloned().collect();
            units.extend(unit_lattice(curve, &s)?.generators.unwrap_or_default());
        }
        Ok(Sampler { rng, cfg: cfg.clone(), curve: curve.clone(), n, elems, units })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn os_elem(&mut self) -> FnElem {
        let h = self.cfg.height;
        self.elems.sample(&mut self.rng, h)
    }

    pub fn next_gamma(&mut self) -> MatK {
        let len = self.rng.gen_range(0..=self.cfg.word_length);
        let mut m = MatK::identity(&self.curve, self.n);
        for _ in 0..len {
            let letter = if !self.units.is_empty() && self.cfg.unit_exponent_bound > 0 && self.rng.gen_bool(0.25) {
                let u = &self.units[self.rng.gen_range(0..self.units.len())];
                let b = self.cfg.unit_exponent_bound as i64;
                let e = loop {
                    let e = self.rng.gen_range(-b..=b);
                    if e != 0 {
                        break e;
                    }
                };
                let i = self.rng.gen_range(0..self.n - 1);
                let mut d = vec![FnElem::one(&self.curve); self.n];
                d[i] = u.pow(e);
                d[i + 1] = u.pow(-e);
                MatK::diag(&d)
            } else {
                let i = self.rng.gen_range(0..self.n);
                let j = (i + self.rng.gen_range(1..self.n)) % self.n;
                let x = self.os_elem();
                elementary(&self.curve, self.n, i, j, &x).unwrap()
            };
            m = m.mul(&letter);
        }
        m
    }
}

/// First element of the stream for `cfg`.
pub fn sample_gamma(n: usize, curve: &Curve, s: &BTreeSet<Place>, cfg: &SamplerCfg) -> Result<MatK> {
    Ok(Sampler::new(curve, n, s, cfg)?.next_gamma())
}

/// Random word in `SL_n(k)`: elementary matrices and `diag(l, 1/l)` with
/// parameters of height `<= h`.
pub fn random_sl_k<R: Rng>(rng: &mut R, curve: &Curve, n: usize, h: usize, len: usize) -> MatK {
    let mut m = MatK::identity(curve, n);
    for _ in 0..len {
        let letter = if rng.gen_bool(0.3) {
            let l = random_k_unit(rng, curve, h);
            let i = rng.gen_range(0..n - 1);
            let mut d = vec![FnElem::one(curve); n];
            d[i] = l.clone();
            d[i + 1] = l.inv().unwrap();
            MatK::diag(&d)
        } else {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            elementary(curve, n, i, j, &random_k_elem(rng, curve, h)).unwrap()
        };
        m = m.mul(&letter);
    }
    m
}

/// Random element of the upper triangular group `B(k)` of `SL_n`.
pub fn random_borel_k<R: Rng>(rng: &mut R, curve: &Curve, n: usize, h: usize) -> MatK {
    let mut d: Vec<FnElem> = (0..n - 1).map(|_| random_k_unit(rng, curve, h)).collect();
    let prod = d.iter().fold(FnElem::one(curve), |a, x| a.mul(x));
    d.push(prod.inv().unwrap());
    let mut m = MatK::diag(&d);
    for i in 0..n {
        for j in i + 1..n {
            let x = random_k_elem(rng, curve, h);
            let e = elementary(curve, n, i, j, &x).unwrap();
            m = m.mul(&e);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::CurveDesc;
    use crate::slgroups::in_sl_os;

    #[test]
    fn streams_are_reproducible() {
        let c = CurveDesc::parse("p1 q=3").unwrap();
        let s: BTreeSet<Place> = [Place::Infinity, Place::parse(&c, "t").unwrap()].into();
        let cfg = SamplerCfg::default();
        let a: Vec<MatK> = {
            let mut sm = Sampler::new(&c, 3, &s, &cfg).unwrap();
            (0..20).map(|_| sm.next_gamma()).collect()
        };
        let b: Vec<MatK> = {
            let mut sm = Sampler::new(&c, 3, &s, &cfg).unwrap();
            (0..20).map(|_| sm.next_gamma()).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|m| in_sl_os(m, &s)));
        let zero = SamplerCfg { word_length: 0, ..cfg };
        assert!(sample_gamma(2, &c, &s, &zero).unwrap().is_identity());
        let other = Sampler::for_worker(&c, 3, &s, &SamplerCfg::default(), 1).unwrap().next_gamma();
        assert!(a.iter().take(3).any(|m| m != &other));
    }

    #[test]
    fn elliptic_needs_o() {
        let e = CurveDesc::parse("elliptic q=5 a=1 b=1").unwrap();
        let s: BTreeSet<Place> = [Place::parse(&e, "pt(0,1)@1").unwrap()].into();
        assert!(matches!(Sampler::new(&e, 2, &s, &SamplerCfg::default()), Err(Error::Unsupported(_))));
    }
}
