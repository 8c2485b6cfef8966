//! Square matrices over the function field `k`, `n <= 4`.

use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{os_member, Curve, FnElem, Place};
use std::collections::BTreeSet;

pub const MAX_N: usize = 4;

/// An `n x n` matrix over `k`. Constructors that promise `SL_n` check the
/// determinant; [`MatK::gl`] skips that check for intermediate products.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatK {
    n: usize,
    e: Vec<FnElem>,
}

impl MatK {
    fn raw(n: usize, e: Vec<FnElem>) -> Self {
        debug_assert_eq!(e.len(), n * n);
        MatK { n, e }
    }

    /// Any square matrix, no determinant condition.
    pub fn gl(rows: Vec<Vec<FnElem>>) -> Result<MatK> {
        let n = rows.len();
        if !(1..=MAX_N).contains(&n) || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("expected a square matrix of size 1..={MAX_N}")));
        }
        Ok(MatK::raw(n, rows.into_iter().flatten().collect()))
    }

    /// A matrix of determinant one.
    pub fn sl(rows: Vec<Vec<FnElem>>) -> Result<MatK> {
        let m = MatK::gl(rows)?;
        if !m.det().is_one() {
            return Err(Error::Invalid(format!("determinant is {}, not 1", m.det())));
        }
        Ok(m)
    }

    pub fn identity(curve: &Curve, n: usize) -> MatK {
        let e = (0..n * n)
            .map(|k| if k / n == k % n { FnElem::one(curve) } else { FnElem::zero(curve) })
            .collect();
        MatK::raw(n, e)
    }

    pub fn diag(d: &[FnElem]) -> MatK {
        let n = d.len();
        let curve = d[0].curve().clone();
        let mut m = MatK::identity(&curve, n);
        for (i, x) in d.iter().enumerate() {
            m.e[i * n + i] = x.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn curve(&self) -> &Curve {
        self.e[0].curve()
    }

    pub fn get(&self, i: usize, j: usize) -> &FnElem {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FnElem) {
        self.e[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FnElem] {
        &self.e
    }

    pub fn rows(&self) -> Vec<Vec<FnElem>> {
        self.e.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FnElem> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &MatK) -> MatK {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let curve = self.curve();
        let e = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(FnElem::zero(curve), |acc, l| {
                    let (a, b) = (self.get(i, l), o.get(l, j));
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect();
        MatK::raw(n, e)
    }

    pub fn pow(&self, k: u32) -> MatK {
        (0..k).fold(MatK::identity(self.curve(), self.n), |acc, _| acc.mul(self))
    }

    /// Determinant of the submatrix on `rows x cols`, by cofactor expansion.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> FnElem {
        assert_eq!(rows.len(), cols.len());
        let curve = self.curve();
        match rows.len() {
            0 => FnElem::one(curve),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = FnElem::zero(curve);
                let rest = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.mul(&self.minor(rest, &sub));
                    acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    pub fn det(&self) -> FnElem {
        let all: Vec<usize> = (0..self.n).collect();
        self.minor(&all, &all)
    }

    /// Adjugate divided by the determinant.
    pub fn inv(&self) -> Option<MatK> {
        let d = self.det().inv()?;
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // (i, j) entry of the inverse is the (j, i) cofactor
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor(&rows, &cols);
                let c = if (i + j) % 2 == 0 { m } else { m.neg() };
                e.push(c.mul(&d));
            }
        }
        Some(MatK::raw(n, e))
    }

    pub fn transpose(&self) -> MatK {
        let n = self.n;
        MatK::raw(n, (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Row-major canonical strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn parse(curve: &Curve, rows: &[Vec<String>]) -> Result<MatK> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| FnElem::parse(curve, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatK::gl(rows)
    }

    pub fn max_height(&self) -> usize {
        self.e.iter().map(FnElem::height).max().unwrap_or(0)
    }
}

impl fmt::Display for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `I + x E_ij` (indices from 0).
pub fn elementary(curve: &Curve, n: usize, i: usize, j: usize, x: &FnElem) -> Result<MatK> {
    if i == j {
        return Err(Error::DiagonalRoot(i));
    }
    if i >= n || j >= n || !(2..=MAX_N).contains(&n) {
        return Err(Error::Invalid(format!("root ({i}, {j}) out of range for n = {n}")));
    }
    let mut m = MatK::identity(curve, n);
    m.set(i, j, x.clone());
    Ok(m)
}

/// Determinant one with every entry in `O_S`.
pub fn in_sl_os(m: &MatK, s: &BTreeSet<Place>) -> bool {
    m.entries().iter().all(|x| os_member(x, s)) && m.det().is_one()
}

/// Diagonal and unipotent parts of an upper triangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelParts {
    pub t: MatK,
    pub u: MatK,
}

/// `m = t u` with `t = diag(m)` and `u` unitriangular.
pub fn borel_factor(m: &MatK) -> Result<BorelParts> {
    if !m.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    let d: Vec<FnElem> = (0..m.n()).map(|i| m.get(i, i).clone()).collect();
    let t = MatK::diag(&d);
    let tinv = MatK::diag(&d.iter().map(|x| x.inv().expect("invertible diagonal")).collect::<Vec<_>>());
    Ok(BorelParts { u: tinv.mul(m), t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::CurveDesc;

    fn p1() -> Curve {
        CurveDesc::parse("p1 q=2").unwrap()
    }

    fn f(c: &Curve, s: &str) -> FnElem {
        FnElem::parse(c, s).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let c = p1();
        let a = elementary(&c, 2, 0, 1, &f(&c, "t")).unwrap();
        assert_eq!(a.to_string(), "[[1, t], [0, 1]]");
        let b = elementary(&c, 2, 1, 0, &f(&c, "1/t")).unwrap();
        assert_eq!(b.to_strings(), vec![vec!["1", "0"], vec!["(1)/(t)", "1"]]);
        let x = f(&c, "t^2+1");
        let y = f(&c, "1/(t+1)");
        let lhs = elementary(&c, 3, 0, 1, &x).unwrap().mul(&elementary(&c, 3, 0, 1, &y).unwrap());
        assert_eq!(lhs, elementary(&c, 3, 0, 1, &x.add(&y)).unwrap());
        assert_eq!(elementary(&c, 2, 1, 1, &x).unwrap_err(), Error::DiagonalRoot(1));
    }

    #[test]
    fn membership() {
        let c = p1();
        let s: BTreeSet<Place> = [Place::Infinity].into();
        assert!(in_sl_os(&MatK::identity(&c, 3), &s));
        assert!(!in_sl_os(&elementary(&c, 2, 0, 1, &f(&c, "1/t")).unwrap(), &s));
        let g = elementary(&c, 2, 0, 1, &f(&c, "t")).unwrap().mul(&elementary(&c, 2, 1, 0, &f(&c, "t^2+1")).unwrap());
        assert!(in_sl_os(&g, &s));
        assert!(g.mul(&g.inv().unwrap()).is_identity());
    }

    #[test]
    fn borel_examples() {
        let c = p1();
        let id = MatK::identity(&c, 2);
        let parts = borel_factor(&id).unwrap();
        assert!(parts.t.is_identity() && parts.u.is_identity());
        let u = f(&c, "t");
        let b = f(&c, "t^2+1");
        let m = MatK::sl(vec![vec![u.clone(), b.clone()], vec![FnElem::zero(&c), u.inv().unwrap()]]).unwrap();
        let parts = borel_factor(&m).unwrap();
        assert_eq!(parts.t, MatK::diag(&[u.clone(), u.inv().unwrap()]));
        assert_eq!(parts.u, elementary(&c, 2, 0, 1, &b.div(&u).unwrap()).unwrap());
        assert_eq!(parts.t.mul(&parts.u), m);
        let un = elementary(&c, 3, 0, 2, &u).unwrap().mul(&elementary(&c, 3, 1, 2, &b).unwrap());
        assert!(borel_factor(&un).unwrap().t.is_identity());
        let low = elementary(&c, 2, 1, 0, &u).unwrap();
        assert_eq!(borel_factor(&low).unwrap_err(), Error::NotUpperTriangular);
    }
}
