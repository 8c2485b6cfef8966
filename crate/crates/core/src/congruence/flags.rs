//! Enumeration of `SL_n(R)` and its left `B_n(R)`-cosets, with the lifting
//! of `SL_n(R)` back to `SL_n(F_q[t])`.

use std::collections::BTreeSet;

use super::quot::{QuotRing, RingMat};
use crate::error::{Error, Result};
use crate::funcfield::{Curve, FnElem, Place, RatFunc};
use crate::ff::Poly;
use crate::slgroups::{elementary, MatK};

/// `n = 2` with `|R| <= 64`, or `n = 3` with `R` a field of size at most 4.
pub fn within_budget(n: usize, r: &QuotRing) -> bool {
    match n {
        2 => r.size() <= 64,
        3 => r.is_field() && r.size() <= 4,
        _ => false,
    }
}

fn check_budget(n: usize, r: &QuotRing) -> Result<()> {
    if within_budget(n, r) {
        Ok(())
    } else {
        Err(Error::BudgetExceeded(format!("enumerating SL_{n}({r:?}) is outside the budget")))
    }
}

/// Every element of `SL_n(R)`. For `n = 2` the last entry is solved for
/// whenever the top-left entry is a unit.
pub fn enumerate_sl(n: usize, r: &QuotRing) -> Result<Vec<RingMat>> {
    check_budget(n, r)?;
    let q = r.size();
    let mut out = Vec::new();
    if n == 2 {
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let bc = r.mul(b, c);
                    match r.inv(a) {
                        Some(ai) => out.push(RingMat::new(2, vec![a, b, c, r.mul(ai, r.add(1, bc))])),
                        None => {
                            for d in 0..q {
                                if r.sub(r.mul(a, d), bc) == 1 {
                                    out.push(RingMat::new(2, vec![a, b, c, d]));
                                }
                            }
                        }
                    }
                }
            }
        }
        return Ok(out);
    }
    let total = (q as u64).pow((n * n) as u32);
    for idx in 0..total {
        let mut e = Vec::with_capacity(n * n);
        let mut k = idx;
        for _ in 0..n * n {
            e.push((k % q as u64) as u32);
            k /= q as u64;
        }
        let m = RingMat::new(n, e);
        if m.det(r) == 1 {
            out.push(m);
        }
    }
    Ok(out)
}

/// Upper triangular matrices of determinant one over `R`.
pub fn borel(n: usize, r: &QuotRing) -> Vec<RingMat> {
    let units = r.units();
    let mut diags: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n - 1 {
        diags = diags.iter().flat_map(|d| units.iter().map(move |&u| [d.clone(), vec![u]].concat())).collect();
    }
    let above: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for d in &diags {
        let last = r.inv(d.iter().fold(1, |a, &x| r.mul(a, x))).unwrap();
        let count = (r.size() as u64).pow(above.len() as u32);
        for idx in 0..count {
            let mut m = RingMat::identity(n);
            for (i, &x) in d.iter().chain([last].iter()).enumerate() {
                m.set(i, i, x);
            }
            let mut k = idx;
            for &(i, j) in &above {
                m.set(i, j, (k % r.size() as u64) as u32);
                k /= r.size() as u64;
            }
            out.push(m);
        }
    }
    out
}

/// `prod_{k=1}^{n} (1 + q + ... + q^{k-1})`, the number of complete flags in
/// `F_q^n`.
pub fn gaussian_flag_count(n: usize, q: u64) -> u64 {
    (1..=n as u32).map(|k| (0..k).map(|i| q.pow(i)).sum::<u64>()).product()
}

/// Pairs `(a, b)` in `R^2` generating the unit ideal.
pub fn unimodular_pair_count(r: &QuotRing) -> u64 {
    let mut n = 0;
    for a in 0..r.size() {
        let g = r.elem(a).gcd(r.modulus());
        for b in 0..r.size() {
            if g.gcd(r.elem(b)).is_one() {
                n += 1;
            }
        }
    }
    n
}

fn key(m: &RingMat, q: u32) -> usize {
    m.entries().iter().rev().fold(0usize, |acc, &a| acc * q as usize + a as usize)
}

/// `|SL_n(R)/B_n(R)|` by sweeping each unvisited matrix's coset `g B_n(R)`.
///
/// Over a field the count must equal the Gaussian flag count; for `n = 2`
/// it must equal the unimodular pairs modulo `R^*`. Either mismatch is an
/// `InvariantViolation`.
pub fn flag_coset_count(n: usize, r: &QuotRing) -> Result<u64> {
    let sl = enumerate_sl(n, r)?;
    let b = borel(n, r);
    let q = r.size();
    let mut seen = vec![false; (q as usize).pow((n * n) as u32)];
    let mut cosets = 0u64;
    for g in &sl {
        if seen[key(g, q)] {
            continue;
        }
        cosets += 1;
        for h in &b {
            let k = key(&g.mul(r, h), q);
            if seen[k] {
                return Err(Error::InvariantViolation("cosets of B_n(R) overlap".into()));
            }
            seen[k] = true;
        }
    }
    if cosets * b.len() as u64 != sl.len() as u64 {
        return Err(Error::InvariantViolation("cosets do not cover SL_n(R)".into()));
    }
    if r.is_field() {
        let want = gaussian_flag_count(n, q as u64);
        if cosets != want {
            return Err(Error::InvariantViolation(format!("{cosets} cosets but {want} flags")));
        }
    }
    if n == 2 {
        let want = unimodular_pair_count(r) / r.units().len() as u64;
        if cosets != want {
            return Err(Error::InvariantViolation(format!("{cosets} cosets but {want} unimodular lines")));
        }
    }
    Ok(cosets)
}

/// Number of `Gamma_I`-classes of maximal unipotent subgroups of
/// `SL_n(F_q[t])`, as `|SL_n(R)/B_n(R)|` for `R = F_q[t]/(f)`.
pub fn congruence_cusp_count(n: usize, curve: &Curve, s: &BTreeSet<Place>, f: &Poly) -> Result<u64> {
    if curve.is_elliptic() || s.len() != 1 || !s.contains(&Place::Infinity) {
        return Err(Error::Unsupported("congruence cusps need O_S = F_q[t]".into()));
    }
    flag_coset_count(n, &QuotRing::new(f)?)
}

// row ops recorded as (i, j, x): row_i += x row_j
type RowOp = (usize, usize, u32);

fn apply(r: &QuotRing, m: &mut RingMat, (i, j, x): RowOp, ops: &mut Vec<RowOp>) {
    for c in 0..m.n() {
        let v = r.add(m.get(i, c), r.mul(x, m.get(j, c)));
        m.set(i, c, v);
    }
    ops.push((i, j, x));
}

/// Writes `m` in `SL_n(R)` as a product of elementary matrices and lifts
/// each parameter to its reduced representative in `F_q[t]`. The lift is
/// reduced back and compared with `m`.
pub fn lift_to_sl(curve: &Curve, r: &QuotRing, m: &RingMat) -> Result<MatK> {
    let n = m.n();
    if m.det(r) != 1 {
        return Err(Error::Invalid("matrix is not in SL_n(R)".into()));
    }
    let mut a = m.clone();
    let mut ops = Vec::new();
    for j in 0..n {
        if !r.is_unit(a.get(j, j)) {
            // finite rings have stable range one: some combination of the
            // lower rows turns the pivot into a unit
            let rest: Vec<usize> = (j + 1..n).collect();
            let combos = (r.size() as u64).pow(rest.len() as u32);
            let found = (1..combos).find(|&idx| {
                let mut k = idx;
                let mut v = a.get(j, j);
                for &i in &rest {
                    v = r.add(v, r.mul((k % r.size() as u64) as u32, a.get(i, j)));
                    k /= r.size() as u64;
                }
                r.is_unit(v)
            });
            let idx = found.ok_or_else(|| Error::InvariantViolation("column is not unimodular".into()))?;
            let mut k = idx;
            for &i in &rest {
                let x = (k % r.size() as u64) as u32;
                k /= r.size() as u64;
                if x != 0 {
                    apply(r, &mut a, (j, i, x), &mut ops);
                }
            }
        }
        let inv = r.inv(a.get(j, j)).unwrap();
        for i in 0..n {
            if i != j && a.get(i, j) != 0 {
                let x = r.neg(r.mul(a.get(i, j), inv));
                apply(r, &mut a, (i, j, x), &mut ops);
            }
        }
    }
    // a = diag(u_1, ..., u_n) = L m, so m = L^-1 a
    let lift = |x: u32| FnElem::from_ratfunc(curve, RatFunc::from_poly(r.elem(x).clone()));
    let mut out = MatK::identity(curve, n);
    for &(i, j, x) in &ops {
        out = out.mul(&elementary(curve, n, i, j, &lift(r.neg(x)))?);
    }
    // diag(c, c^-1) on rows i, i+1 = w(c) w(1)^-1 with w(c) = e12(c) e21(-c^-1) e12(c)
    let mut c = 1;
    for i in 0..n - 1 {
        c = r.mul(c, a.get(i, i));
        let ci = r.inv(c).unwrap();
        for (x, y, z) in [(c, r.neg(ci), c), (r.neg(1), 1, r.neg(1))] {
            out = out.mul(&elementary(curve, n, i, i + 1, &lift(x))?);
            out = out.mul(&elementary(curve, n, i + 1, i, &lift(y))?);
            out = out.mul(&elementary(curve, n, i, i + 1, &lift(z))?);
        }
    }
    if !out.det().is_one() || RingMat::reduce(r, &out)? != *m {
        return Err(Error::InvariantViolation("lift does not reduce to the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::ff_make;
    use crate::funcfield::CurveDesc;

    fn ring(p: u64, d: u32, f: &str) -> QuotRing {
        QuotRing::new(&Poly::parse(&ff_make(p, d).unwrap(), f).unwrap()).unwrap()
    }

    #[test]
    fn flag_examples() {
        assert_eq!(flag_coset_count(2, &ring(2, 1, "t")).unwrap(), 3);
        assert_eq!(flag_coset_count(2, &ring(2, 1, "t^2+t+1")).unwrap(), 5);
        assert_eq!(flag_coset_count(2, &ring(2, 1, "t^2")).unwrap(), 6);
        assert_eq!(flag_coset_count(3, &ring(2, 1, "t")).unwrap(), 21);
        assert_eq!(flag_coset_count(2, &ring(3, 1, "t")).unwrap(), 4);
        // F_2[t]/(t(t+1)) = F_2 x F_2: 3 * 3 lines
        assert_eq!(flag_coset_count(2, &ring(2, 1, "t^2+t")).unwrap(), 9);
        assert_eq!(gaussian_flag_count(3, 2), 21);
        assert_eq!(gaussian_flag_count(2, 8), 9);
        assert!(matches!(flag_coset_count(3, &ring(2, 1, "t^2")), Err(Error::BudgetExceeded(_))));
        assert!(matches!(flag_coset_count(4, &ring(2, 1, "t")), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn sl_and_borel_orders() {
        let r = ring(2, 1, "t^2");
        // |SL_2(F_2[t]/(t^2))| = 48
        assert_eq!(enumerate_sl(2, &r).unwrap().len(), 48);
        assert_eq!(borel(2, &r).len(), 8);
        let f3 = ring(3, 1, "t");
        assert_eq!(enumerate_sl(2, &f3).unwrap().len(), 24);
    }

    #[test]
    fn congruence_examples() {
        let c = CurveDesc::parse("p1 q=2").unwrap();
        let s: BTreeSet<Place> = [Place::Infinity].into();
        let p = |x: &str| Poly::parse(c.base(), x).unwrap();
        assert_eq!(congruence_cusp_count(2, &c, &s, &p("t")).unwrap(), 3);
        assert_eq!(congruence_cusp_count(2, &c, &s, &p("t^2+t+1")).unwrap(), 5);
        assert_eq!(congruence_cusp_count(3, &c, &s, &p("t")).unwrap(), 21);
    }

    #[test]
    fn every_element_lifts() {
        let c = CurveDesc::parse("p1 q=2").unwrap();
        for (n, f) in [(2, "t^2"), (2, "t^2+t"), (3, "t"), (2, "t^3+t+1")] {
            let r = QuotRing::new(&Poly::parse(c.base(), f).unwrap()).unwrap();
            for m in enumerate_sl(n, &r).unwrap() {
                lift_to_sl(&c, &r, &m).unwrap();
            }
        }
    }
}
