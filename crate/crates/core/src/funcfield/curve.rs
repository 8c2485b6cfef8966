//! Curve descriptors: the projective line over `F_q` and short Weierstrass
//! elliptic curves over `F_p`, `p >= 5`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{ff_make, prime_field, Fq, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    ProjectiveLine,
    /// `y^2 = x^3 + a x + b`.
    Elliptic { a: u32, b: u32 },
}

#[derive(Debug, PartialEq, Eq)]
pub struct CurveDesc {
    kind: CurveKind,
    base: Fq,
}

pub type Curve = Arc<CurveDesc>;

impl CurveDesc {
    pub fn projective_line(base: &Fq) -> Curve {
        Arc::new(CurveDesc { kind: CurveKind::ProjectiveLine, base: base.clone() })
    }

    pub fn elliptic(p: u64, a: i64, b: i64) -> Result<Curve> {
        if p == 2 || p == 3 {
            return Err(Error::Unsupported("elliptic backend requires characteristic >= 5".into()));
        }
        let base = prime_field(p)?;
        let (a, b) = (base.from_int_raw(a), base.from_int_raw(b));
        // 4a^3 + 27b^2 != 0
        let f = &base;
        let a3 = f.mul_raw(a, f.mul_raw(a, a));
        let disc = f.add_raw(f.mul_raw(f.from_int_raw(4), a3), f.mul_raw(f.from_int_raw(27), f.mul_raw(b, b)));
        if disc == 0 {
            return Err(Error::Invalid("singular Weierstrass equation".into()));
        }
        Ok(Arc::new(CurveDesc { kind: CurveKind::Elliptic { a, b }, base }))
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self.kind, CurveKind::Elliptic { .. })
    }

    /// Name of the polynomial variable: `t` on the line, `x` on `E`.
    pub fn var(&self) -> &'static str {
        if self.is_elliptic() {
            "x"
        } else {
            "t"
        }
    }

    /// Weierstrass coefficients `(a, b)`.
    pub fn ab(&self) -> Option<(u32, u32)> {
        match self.kind {
            CurveKind::Elliptic { a, b } => Some((a, b)),
            CurveKind::ProjectiveLine => None,
        }
    }

    /// `x^3 + a x + b` as a polynomial in `x`.
    pub fn rhs(&self) -> Option<Poly> {
        self.ab().map(|(a, b)| Poly::new(&self.base, vec![b, a, 0, 1]))
    }

    /// Parses `p1 q=<p>^<d>` (or `p1 q=<p>`) and `elliptic q=<p> a=<int> b=<int>`.
    pub fn parse(src: &str) -> Result<Curve> {
        let mut words = src.split_whitespace();
        let kind = words.next().ok_or_else(|| Error::parse(0, "empty curve spec"))?;
        let mut q = None;
        let mut a = None;
        let mut b = None;
        for w in words {
            let pos = src.find(w).unwrap_or(0);
            let (key, val) = w.split_once('=').ok_or_else(|| Error::parse(pos, format!("expected key=value, got '{w}'")))?;
            let num = |s: &str, off: usize| -> Result<i64> {
                s.parse::<i64>().map_err(|_| Error::parse(pos + off, format!("invalid integer '{s}'")))
            };
            match key {
                "q" => {
                    let (p, d) = match val.split_once('^') {
                        Some((p, d)) => (num(p, 2)?, num(d, 3 + p.len())?),
                        None => (num(val, 2)?, 1),
                    };
                    q = Some((p, d));
                }
                "a" => a = Some(num(val, 2)?),
                "b" => b = Some(num(val, 2)?),
                _ => return Err(Error::parse(pos, format!("unknown key '{key}'"))),
            }
        }
        let (p, d) = q.ok_or_else(|| Error::parse(src.len(), "missing q="))?;
        if p < 2 || d < 1 {
            return Err(Error::parse(src.find("q=").unwrap_or(0), "invalid field size"));
        }
        match kind {
            "p1" => {
                if a.is_some() || b.is_some() {
                    return Err(Error::parse(0, "p1 takes no Weierstrass coefficients"));
                }
                Ok(CurveDesc::projective_line(&ff_make(p as u64, d as u32)?))
            }
            "elliptic" => {
                if d != 1 {
                    return Err(Error::Unsupported("elliptic backend requires a prime field".into()));
                }
                let a = a.ok_or_else(|| Error::parse(src.len(), "missing a="))?;
                let b = b.ok_or_else(|| Error::parse(src.len(), "missing b="))?;
                CurveDesc::elliptic(p as u64, a, b)
            }
            other => Err(Error::parse(0, format!("unknown curve kind '{other}'"))),
        }
    }
}

impl fmt::Display for CurveDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, d) = (self.base.characteristic(), self.base.degree());
        match self.kind {
            CurveKind::ProjectiveLine if d == 1 => write!(f, "p1 q={p}"),
            CurveKind::ProjectiveLine => write!(f, "p1 q={p}^{d}"),
            CurveKind::Elliptic { a, b } => write!(f, "elliptic q={p} a={a} b={b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["p1 q=2", "p1 q=3", "p1 q=2^2", "elliptic q=5 a=1 b=1"] {
            assert_eq!(CurveDesc::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(CurveDesc::parse("p1 q=2^1").unwrap().to_string(), "p1 q=2");
        assert_eq!(CurveDesc::parse("elliptic q=7 a=-1 b=0").unwrap().to_string(), "elliptic q=7 a=6 b=0");
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(CurveDesc::parse("elliptic q=3 a=1 b=1").is_err());
        assert!(CurveDesc::parse("elliptic q=5 a=0 b=0").is_err());
        assert!(matches!(CurveDesc::parse("p1 q=x"), Err(Error::Parse { .. })));
        assert!(matches!(CurveDesc::parse("cubic q=5"), Err(Error::Parse { pos: 0, .. })));
        assert_eq!(CurveDesc::parse("p1 q=6").unwrap_err(), Error::NotPrime(6));
    }
}
