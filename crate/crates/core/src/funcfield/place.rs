//! Places of the two curve backends and their text forms.
//!
//! Line places are `inf` or a monic irreducible in `t`. On `E` a place is
//! `O` (`inf`) or the fibre data over a monic irreducible `h(x)`: ramified
//! (`h | x^3+ax+b`), split (`y = r(x) mod h`, degree `deg h`) or inert
//! (degree `2 deg h`). The text form is the canonical orbit representative
//! `pt(x,y)@m`.

use super::curve::Curve;
use super::elliptic::{place_of_point, places_above, representative_point, EcPoint};
use crate::error::{Error, Result};
use crate::ff::{is_irreducible, FieldDesc, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Ramified,
    Split(Poly),
    Inert,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    /// A finite place of the line.
    Finite(Poly),
    /// An affine place of `E`.
    Point { h: Poly, branch: Branch },
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(h) => h.degree().unwrap(),
            Place::Point { h, branch: Branch::Inert } => 2 * h.degree().unwrap(),
            Place::Point { h, .. } => h.degree().unwrap(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The irreducible of the `t`- or `x`-line under this place.
    pub fn under(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(h) | Place::Point { h, .. } => Some(h),
        }
    }

    pub fn parse(curve: &Curve, src: &str) -> Result<Place> {
        let s = src.trim();
        let off = src.len() - src.trim_start().len();
        if s == "inf" {
            return Ok(Place::Infinity);
        }
        if let Some(rest) = s.strip_prefix("pt(") {
            return parse_point(curve, rest, off + 3);
        }
        let h = Poly::parse_var(curve.base(), s, curve.var()).map_err(|e| shift(e, off))?;
        if h.is_constant() || !h.is_monic() {
            return Err(Error::parse(off, "place polynomial must be monic of positive degree"));
        }
        if !is_irreducible(&h) {
            return Err(Error::parse(off, format!("'{s}' is not irreducible")));
        }
        if !curve.is_elliptic() {
            return Ok(Place::Finite(h));
        }
        let mut above = places_above(curve, &h);
        if above.len() != 1 {
            return Err(Error::parse(off, "fibre splits into two places; use pt(x,y)@m"));
        }
        Ok(above.pop().unwrap())
    }

    pub fn render(&self, curve: &Curve) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(h) => h.to_string_var("t"),
            Place::Point { .. } => match representative_point(curve, self) {
                Ok((field, EcPoint::Affine(x, y))) => {
                    format!("pt({},{})@{}", field.elem_to_string(x), field.elem_to_string(y), self.degree())
                }
                _ => unreachable!("affine place without a representative"),
            },
        }
    }
}

fn shift(e: Error, off: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
        other => other,
    }
}

/// Parses `x,y)@m` (after the `pt(` prefix).
fn parse_point(curve: &Curve, rest: &str, off: usize) -> Result<Place> {
    if !curve.is_elliptic() {
        return Err(Error::parse(off, "point places need an elliptic curve"));
    }
    let close = rest.rfind(")@").ok_or_else(|| Error::parse(off, "expected ')@<degree>'"))?;
    let m: u32 = rest[close + 2..]
        .parse()
        .map_err(|_| Error::parse(off + close + 2, "invalid place degree"))?;
    if !(1..=3).contains(&m) {
        return Err(Error::parse(off + close + 2, "place degree must be 1, 2 or 3"));
    }
    let inner = &rest[..close];
    let mut depth = 0;
    let comma = inner
        .char_indices()
        .find(|&(_, ch)| {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            ch == ',' && depth == 0
        })
        .map(|(i, _)| i)
        .ok_or_else(|| Error::parse(off, "expected 'x,y'"))?;
    let field = FieldDesc::build(curve.base().characteristic() as u64, m)?;
    let x = parse_elem(&field, &inner[..comma], off)?;
    let y = parse_elem(&field, &inner[comma + 1..], off + comma + 1)?;
    let pt = EcPoint::Affine(x, y);
    if !super::elliptic::group_over(curve, &field).contains(&pt) {
        return Err(Error::parse(off, "point is not on the curve"));
    }
    let place = place_of_point(curve, &field, &pt);
    if place.degree() != m as usize {
        return Err(Error::parse(off + close + 2, format!("point has degree {}, not {m}", place.degree())));
    }
    Ok(place)
}

fn parse_elem(field: &FieldDesc, s: &str, off: usize) -> Result<u32> {
    let t = s.trim();
    let bad = || Error::parse(off, format!("invalid field element '{t}'"));
    if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        let ds: Vec<u32> = body
            .split(',')
            .map(|d| d.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        return field.elem_from_digits_high_first(&ds).ok_or_else(bad);
    }
    let n: u32 = t.parse().map_err(|_| bad())?;
    if field.degree() != 1 && n >= field.characteristic() {
        return Err(bad());
    }
    if n >= field.size() {
        return Err(bad());
    }
    Ok(n)
}
