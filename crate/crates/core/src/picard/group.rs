//! Finitely generated abelian groups given by generators and relations.

use serde::{Deserialize, Serialize};

use super::snf::{snf, vec_mat, Mat};

/// `Z/d_1 + ... + Z/d_k + Z^r` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn integers() -> Self {
        FinAbGroup { invariant_factors: vec![], free_rank: 1 }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Torsion coordinates first, then free ones.
    pub fn dims(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn identity(&self) -> GrpElem {
        GrpElem { coords: vec![0; self.dims()] }
    }

    pub fn reduce(&self, mut coords: Vec<i64>) -> GrpElem {
        for (c, &d) in coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.rem_euclid(d as i64);
        }
        GrpElem { coords }
    }

    pub fn add(&self, a: &GrpElem, b: &GrpElem) -> GrpElem {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GrpElem) -> GrpElem {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GrpElem, k: i64) -> GrpElem {
        self.reduce(a.coords.iter().map(|x| x * k).collect())
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GrpElem> {
        assert!(self.is_finite());
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..d as i64).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|coords| GrpElem { coords }).collect()
    }

    /// `|G^t|` for finite `G`.
    pub fn power_order(&self, t: u32) -> Option<u64> {
        self.order().map(|o| o.pow(t))
    }
}

/// Canonical coordinates of an element (torsion parts reduced).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GrpElem {
    pub coords: Vec<i64>,
}

impl GrpElem {
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// `Z^n / <relations>` together with the coordinate change to the
/// invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: usize,
    pub group: FinAbGroup,
    // columns of `v` kept, with their moduli (0 for free)
    proj: Mat,
    keep: Vec<(usize, u64)>,
}

impl Presentation {
    pub fn new(gens: usize, relations: &[Vec<i64>]) -> Self {
        let rel: Mat = if relations.is_empty() { vec![vec![0; gens]] } else { relations.to_vec() };
        assert!(rel.iter().all(|r| r.len() == gens));
        let s = snf(&rel);
        let diag = s.diagonal();
        let mut keep = Vec::new();
        for j in 0..gens {
            let d = diag.get(j).copied().unwrap_or(0).unsigned_abs();
            if d != 1 {
                keep.push((j, d));
            }
        }
        // torsion first, free last (the diagonal already puts zeros at the end)
        let invariant_factors: Vec<u64> = keep.iter().map(|&(_, d)| d).filter(|&d| d != 0).collect();
        let free_rank = keep.iter().filter(|&&(_, d)| d == 0).count();
        Presentation { gens, group: FinAbGroup { invariant_factors, free_rank }, proj: s.v, keep }
    }

    /// Image of a vector of `Z^n`.
    pub fn class(&self, x: &[i64]) -> GrpElem {
        assert_eq!(x.len(), self.gens);
        let y = vec_mat(x, &self.proj);
        self.group.reduce(self.keep.iter().map(|&(j, _)| y[j]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotients() {
        let p = Presentation::new(1, &[vec![2]]);
        assert_eq!(p.group, FinAbGroup { invariant_factors: vec![2], free_rank: 0 });
        assert_eq!(p.class(&[3]).coords, vec![1]);
        let p = Presentation::new(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(p.group.invariant_factors, vec![6]);
        assert_eq!(p.class(&[1, 1]).coords.len(), 1);
        let elems: std::collections::BTreeSet<_> =
            (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).map(|(a, b)| p.class(&[a, b])).collect();
        assert_eq!(elems.len(), 6);
        let p = Presentation::new(2, &[]);
        assert_eq!(p.group.free_rank, 2);
        let json = serde_json::to_string(&p.group).unwrap();
        assert_eq!(json, r#"{"invariant_factors":[],"free_rank":2}"#);
    }
}
