//! Linking-number signs of skew lines spanned by point pairs.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::det4;
use super::net::{coplanar, verify_octad, OctadClass};
use super::{GeometryError, ProjPoint};

/// A line given by an ordered pair of distinct points.
pub type Line<'a> = (&'a ProjPoint, &'a ProjPoint);

fn link_sign(a: Line<'_>, b: Line<'_>) -> Result<i8, GeometryError> {
    let d = det4([a.0.coords(), a.1.coords(), b.0.coords(), b.1.coords()]);
    if d.is_zero() {
        return Err(GeometryError::NotSkew);
    }
    Ok(if d.is_positive() { 1 } else { -1 })
}

/// Product of the three pairwise determinant signs. Each point enters two
/// of the three determinants, so the result does not depend on lifts or
/// on the order of points within a line.
pub fn triple_link(l1: Line<'_>, l2: Line<'_>, l3: Line<'_>) -> Result<i8, GeometryError> {
    Ok(link_sign(l1, l2)? * link_sign(l1, l3)? * link_sign(l2, l3)?)
}

fn check_simple(points: &[ProjPoint]) -> Result<(), GeometryError> {
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if coplanar(&points[a], &points[b], &points[c], &points[d]) {
                        return Err(GeometryError::NotSimple);
                    }
                }
            }
        }
    }
    Ok(())
}

/// The 15 perfect matchings of six labels.
pub fn matchings6() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::with_capacity(15);
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        for k in 1..4 {
            let others: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[k]).collect();
            out.push([(0, b), (rest[0], rest[k]), (others[0], others[1])]);
        }
    }
    out
}

fn sign6_unchecked(points: &[&ProjPoint]) -> Result<i8, GeometryError> {
    let mut s = 1;
    for m in matchings6() {
        let line = |(i, j): (usize, usize)| (points[i], points[j]);
        s *= triple_link(line(m[0]), line(m[1]), line(m[2]))?;
    }
    Ok(s)
}

/// Product of [`triple_link`] over the 15 matchings of six points.
pub fn sign6(points: &[ProjPoint]) -> Result<i8, GeometryError> {
    if points.len() != 6 {
        return Err(GeometryError::BadInput(format!(
            "expected 6 points, got {}",
            points.len()
        )));
    }
    check_simple(points)?;
    let refs: Vec<&ProjPoint> = points.iter().collect();
    sign6_unchecked(&refs)
}

/// Product of [`sign6`] over the seven 6-point subsets.
pub fn sign7(points: &[ProjPoint]) -> Result<i8, GeometryError> {
    if points.len() != 7 {
        return Err(GeometryError::BadInput(format!(
            "expected 7 points, got {}",
            points.len()
        )));
    }
    check_simple(points)?;
    let mut s = 1;
    for skip in 0..7 {
        let refs: Vec<&ProjPoint> = (0..7).filter(|&i| i != skip).map(|i| &points[i]).collect();
        s *= sign6_unchecked(&refs)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctadSigns {
    pub sign: i8,
    pub per_point: Vec<i8>,
}

/// `sign₇` of the complement of each point; for a regular octad all eight
/// agree and the common value is returned.
pub fn octad_signs(points: &[ProjPoint]) -> Result<OctadSigns, GeometryError> {
    let report = verify_octad(points)?;
    if report.classification != OctadClass::RegularCandidate {
        return Err(GeometryError::NotRegular(report.classification));
    }
    let per_point = (0..8)
        .map(|x| {
            let rest: Vec<ProjPoint> = (0..8).filter(|&i| i != x).map(|i| points[i].clone()).collect();
            sign7(&rest)
        })
        .collect::<Result<Vec<i8>, _>>()?;
    if per_point.iter().any(|&s| s != per_point[0]) {
        return Err(GeometryError::Inconsistent(per_point));
    }
    Ok(OctadSigns {
        sign: per_point[0],
        per_point,
    })
}
