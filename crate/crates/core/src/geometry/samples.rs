//! Generators of verified sample configurations.
//!
//! Regular octads come from the perturbed-cube pipeline: seven vertices of
//! the cube `(±1, ±1, ±1, 1)` are moved by small rational offsets, the net
//! through them is completed to its eighth base point, and the result is
//! kept only if [`verify_octad`] classifies it as a regular candidate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use super::linalg::{det_rat, Rational};
use super::net::{complete_octad, verify_octad, OctadClass};
use super::ProjPoint;

const DENOMINATOR: i64 = 8;
const MAX_TRIES: usize = 200;

fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-bound..=bound)),
        BigInt::from(DENOMINATOR),
    )
}

fn affine(p: &ProjPoint) -> Option<[Rational; 3]> {
    let c = p.coords();
    if c[3].is_zero() {
        return None;
    }
    Some(std::array::from_fn(|i| Rational::new(c[i].clone(), c[3].clone())))
}

fn from_affine(v: &[Rational; 3]) -> ProjPoint {
    let mut h = v.to_vec();
    h.push(Rational::one());
    ProjPoint::from_rationals(&h).expect("w = 1")
}

fn perturbed_cube_seven(rng: &mut ChaCha8Rng) -> Vec<ProjPoint> {
    let mut out = Vec::with_capacity(7);
    for x in [1i64, -1] {
        for y in [1i64, -1] {
            for z in [1i64, -1] {
                if (x, y, z) == (-1, -1, -1) {
                    continue;
                }
                let v: [Rational; 3] = std::array::from_fn(|i| {
                    let base = Rational::from_integer(BigInt::from([x, y, z][i]));
                    base + small_rational(rng, 2)
                });
                out.push(from_affine(&v));
            }
        }
    }
    out
}

/// One regular octad from the pipeline, or `None` if this draw failed.
pub fn perturbed_cube_octad(rng: &mut ChaCha8Rng) -> Option<Vec<ProjPoint>> {
    let mut pts = perturbed_cube_seven(rng);
    let eighth = complete_octad(&pts).ok()?;
    pts.push(eighth);
    let report = verify_octad(&pts).ok()?;
    (report.classification == OctadClass::RegularCandidate).then_some(pts)
}

/// `count` regular octads, deterministic in `seed`.
pub fn sample_octads(count: usize, seed: u64) -> Vec<Vec<ProjPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < count * MAX_TRIES {
        tries += 1;
        if let Some(o) = perturbed_cube_octad(&mut rng) {
            out.push(o);
        }
    }
    out
}

pub fn mirror(points: &[ProjPoint]) -> Vec<ProjPoint> {
    points.iter().map(|p| p.mirrored()).collect()
}

/// An octad with exactly two complementary coplanar quadruples: the fourth
/// cube point is pulled into the plane of the first three before completing.
pub fn four_collision_octad(seed: u64) -> Option<Vec<ProjPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TRIES {
        let mut pts = perturbed_cube_seven(&mut rng);
        let base: Vec<[Rational; 3]> = pts[..3].iter().map(|p| affine(p).unwrap()).collect();
        let s = small_rational(&mut rng, 6);
        let t = small_rational(&mut rng, 6);
        let u = Rational::one() - &s - &t;
        let v: [Rational; 3] =
            std::array::from_fn(|i| &s * &base[0][i] + &t * &base[1][i] + &u * &base[2][i]);
        pts[3] = from_affine(&v);
        let Ok(eighth) = complete_octad(&pts) else {
            continue;
        };
        pts.push(eighth);
        if let Ok(r) = verify_octad(&pts) {
            if r.classification == OctadClass::FourCollisionWall {
                return Some(pts);
            }
        }
    }
    None
}

/// Two simple 7-configurations joined by a straight path of one point that
/// makes exactly one quadruple coplanar once.
#[derive(Debug, Clone)]
pub struct WallCrossing {
    pub before: Vec<ProjPoint>,
    pub after: Vec<ProjPoint>,
    pub moving: usize,
    pub quadruple: [usize; 4],
}

fn orientation(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3], d: &[Rational; 3]) -> i8 {
    let rows: Vec<Vec<Rational>> = [a, b, c, d]
        .iter()
        .map(|p| {
            let mut r = p.to_vec();
            r.push(Rational::one());
            r
        })
        .collect();
    let det = det_rat(&rows);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Moves the last point of `seven` along an affine segment that crosses
/// exactly one plane spanned by three of the others.
pub fn wall_crossing(seven: &[ProjPoint], seed: u64) -> Option<WallCrossing> {
    let pts: Vec<[Rational; 3]> = seven.iter().map(affine).collect::<Option<_>>()?;
    let moving = pts.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TRIES * 10 {
        let delta: [Rational; 3] = std::array::from_fn(|_| small_rational(&mut rng, 12));
        let target: [Rational; 3] = std::array::from_fn(|i| &pts[moving][i] + &delta[i]);
        let mut flipped = Vec::new();
        let mut degenerate = false;
        for a in 0..moving {
            for b in a + 1..moving {
                for c in b + 1..moving {
                    let s0 = orientation(&pts[a], &pts[b], &pts[c], &pts[moving]);
                    let s1 = orientation(&pts[a], &pts[b], &pts[c], &target);
                    if s0 == 0 || s1 == 0 {
                        degenerate = true;
                    } else if s0 != s1 {
                        flipped.push([a, b, c, moving]);
                    }
                }
            }
        }
        if !degenerate && flipped.len() == 1 {
            let mut after = seven.to_vec();
            after[moving] = from_affine(&target);
            return Some(WallCrossing {
                before: seven.to_vec(),
                after,
                moving,
                quadruple: flipped[0],
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_produces_regular_octads() {
        let octads = sample_octads(2, 7);
        assert_eq!(octads.len(), 2);
        for o in &octads {
            assert_eq!(
                verify_octad(o).unwrap().classification,
                OctadClass::RegularCandidate
            );
        }
    }

    #[test]
    fn collision_sample_has_two_complementary_planes() {
        let o = four_collision_octad(3).expect("construction succeeds");
        let r = verify_octad(&o).unwrap();
        assert_eq!(r.coplanar_quadruples.len(), 2);
        assert_eq!(r.coplanar_quadruples[0], [0, 1, 2, 3]);
    }
}
