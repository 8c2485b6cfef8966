//! Counting cusps: distinct Steinitz invariants against `|Pic(O_S)|^{n-1}`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::invariant::{steinitz_invariant, Chamber, CuspInvariant};
use crate::error::{Error, Result};
use crate::ff::Poly;
use crate::funcfield::elliptic::points_over;
use crate::funcfield::{EcPoint, FnElem, Place, RatFunc};
use crate::picard::PicOS;
use crate::slgroups::sample::random_sl_k;
use crate::slgroups::{MatK, SamplerCfg};

pub const MAX_EXPECTED: u64 = 10_000;

/// Generator pairs `(a, b)` of fractional ideals meant to hit every class of
/// `Pic(O_S)`; the unit ideal comes first.
///
/// On the line with `P` in `S` of degree `e`, `(t^m/P, (t+1)^m/P)` has
/// min-valuation divisor `(e - m) inf`, so `m = 0..e` sweeps every residue
/// of the degree. On `E` the maximal ideal `(x - x0, y - y0)` of a rational
/// point has divisor that point.
pub fn class_witnesses(pic: &PicOS) -> Vec<(FnElem, FnElem)> {
    let c = pic.curve();
    let mut out = vec![(FnElem::one(c), FnElem::zero(c))];
    if c.is_elliptic() {
        let field = crate::ff::FieldDesc::build(c.base().characteristic() as u64, 1).unwrap();
        for pt in points_over(c, &field) {
            if let EcPoint::Affine(x0, y0) = pt {
                let a = FnElem::var(c).sub(&FnElem::constant(c, x0));
                let b = FnElem::y(c).unwrap().sub(&FnElem::constant(c, y0));
                out.push((a, b));
            }
        }
        return out;
    }
    let base = c.base();
    let t = Poly::var(base);
    let t1 = t.add(&Poly::one(base));
    for p in pic.s() {
        if let Place::Finite(h) = p {
            let inv = RatFunc::from_poly(h.clone()).inv().unwrap();
            for m in 0..=h.degree().unwrap() as u64 {
                let a = RatFunc::from_poly(t.pow(m)).mul(&inv);
                let b = RatFunc::from_poly(t1.pow(m)).mul(&inv);
                out.push((FnElem::from_ratfunc(c, a), FnElem::from_ratfunc(c, b)));
            }
        }
    }
    out
}

/// `[[a, 0], [b, 1/a]]`, a determinant-one completion of the column `(a, b)`.
pub fn complete_column(a: &FnElem, b: &FnElem) -> MatK {
    let z = FnElem::zero(a.curve());
    MatK::gl(vec![vec![a.clone(), z], vec![b.clone(), a.inv().expect("a != 0")]]).unwrap()
}

/// The `2 x 2` block `m` placed on rows and columns `i, i + 1`.
pub fn embed_block(m: &MatK, n: usize, i: usize) -> MatK {
    let mut g = MatK::identity(m.curve(), n);
    for r in 0..2 {
        for s in 0..2 {
            g.set(i + r, i + s, m.get(r, s).clone());
        }
    }
    g
}

/// Deterministic witness chambers: for `n = 2` one per witness pair; for
/// larger `n` products of the blocks over every level.
pub fn witness_chambers(pic: &PicOS, n: usize) -> Vec<MatK> {
    let blocks: Vec<MatK> = class_witnesses(pic).iter().map(|(a, b)| complete_column(a, b)).collect();
    let mut out = vec![MatK::identity(pic.curve(), n)];
    for i in 0..n - 1 {
        let prev = out.clone();
        out.clear();
        for g in &prev {
            for b in &blocks {
                out.push(g.mul(&embed_block(b, n, i)));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Found {
    pub invariant: CuspInvariant,
    pub witness: MatK,
    /// Whether the first matrix with this invariant was a deterministic witness.
    pub from_witness: bool,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub expected: u64,
    pub found: Vec<Found>,
    pub samples_used: usize,
    /// Random chambers dropped because an entry outgrew the degree cap.
    pub samples_discarded: usize,
    pub witnesses_used: usize,
}

impl Census {
    pub fn distinct(&self) -> usize {
        self.found.len()
    }
}

/// Steinitz invariants of `samples` random chambers, the deterministic
/// witnesses and `extra`, grouped by value.
///
/// A random chamber whose minors exceed the polynomial degree cap is
/// discarded and replaced, up to `samples` replacements in total.
pub fn cusp_census(pic: &PicOS, n: usize, samples: usize, cfg: &SamplerCfg, extra: &[MatK]) -> Result<Census> {
    let order = pic.group().order().ok_or_else(|| Error::Invalid("Pic(O_S) is infinite".into()))?;
    let expected = order
        .checked_pow(n as u32 - 1)
        .filter(|&e| e <= MAX_EXPECTED)
        .ok_or_else(|| Error::BudgetExceeded(format!("|Pic(O_S)|^{} exceeds {MAX_EXPECTED}", n - 1)))?;
    let mut seen: BTreeMap<CuspInvariant, Found> = BTreeMap::new();
    let mut record = |g: MatK, from_witness: bool| -> Result<()> {
        let inv = steinitz_invariant(&Chamber::new(g.clone()), pic)?;
        seen.entry(inv.clone()).or_insert(Found { invariant: inv, witness: g, from_witness });
        if seen.len() as u64 > expected {
            return Err(Error::InvariantViolation(format!(
                "{} distinct cusp invariants exceed |Pic(O_S)|^{} = {expected}",
                seen.len(),
                n - 1
            )));
        }
        Ok(())
    };
    let witnesses = witness_chambers(pic, n);
    let witnesses_used = witnesses.len() + extra.len();
    for g in witnesses.into_iter().chain(extra.iter().cloned()) {
        record(g, true)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut used, mut discarded) = (0, 0);
    while used < samples {
        let g = random_sl_k(&mut rng, pic.curve(), n, cfg.height, cfg.word_length.max(1));
        match record(g, false) {
            Ok(()) => used += 1,
            Err(Error::DegreeCap(_)) if discarded < samples => discarded += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(Census {
        n,
        expected,
        found: seen.into_values().collect(),
        samples_used: used,
        samples_discarded: discarded,
        witnesses_used,
    })
}
