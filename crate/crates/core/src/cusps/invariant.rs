//! Chambers at infinity and their Steinitz invariants.

use serde::Serialize;

use crate::error::Result;
use crate::funcfield::FnElem;
use crate::picard::{GrpElem, PicOS};
use crate::slgroups::MatK;

/// The chamber `g^-1 . D_0`. Two chambers are the same cusp when their
/// matrices lie in one double coset `SL_n(O_S) g B(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub g: MatK,
}

impl Chamber {
    pub fn new(g: MatK) -> Self {
        Chamber { g }
    }

    pub fn standard(curve: &crate::funcfield::Curve, n: usize) -> Self {
        Chamber { g: MatK::identity(curve, n) }
    }
}

/// `(c_1, ..., c_{n-1})` in `Pic(O_S)^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CuspInvariant {
    pub classes: Vec<GrpElem>,
}

impl CuspInvariant {
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(GrpElem::is_identity)
    }

    pub fn coords(&self) -> Vec<Vec<i64>> {
        self.classes.iter().map(|c| c.coords.clone()).collect()
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Plucker coordinates of the span of the first `i` columns.
pub fn leading_minors(g: &MatK, i: usize) -> Vec<FnElem> {
    let cols: Vec<usize> = (0..i).collect();
    subsets(g.n(), i).iter().map(|rows| g.minor(rows, &cols)).collect()
}

/// Entry `i` is the class of the ideal spanned by the `i x i` minors of the
/// first `i` columns. Left multiplication by `SL_n(O_S)` recombines these
/// minors unimodularly; right multiplication by `B(k)` scales them by a
/// common factor, so neither changes the classes.
pub fn steinitz_invariant(ch: &Chamber, pic: &PicOS) -> Result<CuspInvariant> {
    let n = ch.g.n();
    let classes = (1..n).map(|i| pic.ideal_class(&leading_minors(&ch.g, i))).collect::<Result<_>>()?;
    Ok(CuspInvariant { classes })
}
