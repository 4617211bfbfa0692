use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{det4, det_int, det_rat, kernel, primitive, rank, rat, solve, Rational};
use super::poly::{Poly, Ternary};
use super::{
    GeometryError, NetOfQuadrics, ProjPoint, QuadricForm, QuarticForm, QUARTIC_EXPONENTS,
};

/// Index pairs `(i, j)`, `i ≤ j`, of the ten quadratic monomials `xᵢxⱼ`.
const MONOMIALS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

const ATTEMPTS: u64 = 5;
const SAMPLE_VALUES: i64 = 25;

pub fn coplanar(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint, s: &ProjPoint) -> bool {
    det4([p.coords(), q.coords(), r.coords(), s.coords()]).is_zero()
}

fn monomial_row(p: &ProjPoint) -> Vec<Rational> {
    let c = p.coords();
    MONOMIALS
        .iter()
        .map(|&(i, j)| Rational::from_integer(&c[i] * &c[j]))
        .collect()
}

fn evaluation_matrix(points: &[ProjPoint]) -> Vec<Vec<Rational>> {
    points.iter().map(monomial_row).collect()
}

fn quadric_from_monomials(v: &[Rational]) -> QuadricForm {
    // off-diagonal monomials contribute twice to xᵀMx
    let mut scaled = Vec::with_capacity(10);
    for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
        scaled.push(if i == j { &v[k] * rat(2) } else { v[k].clone() });
    }
    let ints = primitive(&scaled).expect("kernel vector is nonzero");
    let mut m: [[BigInt; 4]; 4] = Default::default();
    for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
        m[i][j] = ints[k].clone();
        m[j][i] = ints[k].clone();
    }
    QuadricForm::from_matrix(m).expect("symmetric and nonzero")
}

/// Rewrites a basis of a 3-dimensional subspace so that it is the identity
/// on the three coordinates where the subspace has the largest 3×3 minor.
/// This fixes the basis canonically and keeps the coefficients balanced.
fn reduced_basis(basis: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = basis[0].len();
    let minor = |c: [usize; 3]| {
        let sub: Vec<Vec<Rational>> = basis.iter().map(|v| c.iter().map(|&j| v[j].clone()).collect()).collect();
        det_rat(&sub)
    };
    let mut best: Option<([usize; 3], Rational)> = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let d = minor([a, b, c]).abs();
                if best.as_ref().map_or(true, |(_, m)| d > *m) {
                    best = Some(([a, b, c], d));
                }
            }
        }
    }
    let (cols, _) = best.expect("subspace is nonzero");
    let sub: Vec<Vec<Rational>> = basis.iter().map(|v| cols.iter().map(|&j| v[j].clone()).collect()).collect();
    // rows of the result are e_i-combinations: solve sub^T x = e_i
    let sub_t: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|r| sub[r][i].clone()).collect()).collect();
    (0..3)
        .map(|i| {
            let e: Vec<Rational> = (0..3).map(|j| rat((i == j) as i64)).collect();
            let x = solve(&sub_t, &e).expect("maximal minor is nonzero");
            (0..n).map(|j| (0..3).map(|r| &x[r] * &basis[r][j]).sum()).collect()
        })
        .collect()
}

pub fn net_through(points: &[ProjPoint]) -> Result<NetOfQuadrics, GeometryError> {
    if points.len() != 7 {
        return Err(GeometryError::BadInput(format!(
            "expected 7 points, got {}",
            points.len()
        )));
    }
    let m = evaluation_matrix(points);
    let r = rank(&m);
    if r < 7 {
        return Err(GeometryError::DegenerateInput(format!(
            "the points impose only {r} conditions on quadrics"
        )));
    }
    let k = reduced_basis(kernel(&m));
    let gens: Vec<QuadricForm> = k.iter().map(|v| quadric_from_monomials(v)).collect();
    NetOfQuadrics::new([gens[0].clone(), gens[1].clone(), gens[2].clone()])
}

fn adjugate(a: &[[BigInt; 4]; 4]) -> [[BigInt; 4]; 4] {
    let mut out: [[BigInt; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let minor: Vec<Vec<BigInt>> = (0..4)
                .filter(|&r| r != i)
                .map(|r| (0..4).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                .collect();
            let d = det_int(&minor);
            out[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    out
}

fn mat_vec(a: &[[BigInt; 4]; 4], v: &[BigInt; 4]) -> [BigInt; 4] {
    std::array::from_fn(|i| (0..4).map(|j| &a[i][j] * &v[j]).sum())
}

/// `Bᵀ M B`
fn congruent(m: &[[BigInt; 4]; 4], b: &[[BigInt; 4]; 4]) -> [[BigInt; 4]; 4] {
    let mb: [[BigInt; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &m[i][k] * &b[k][j]).sum()));
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &b[k][i] * &mb[k][j]).sum()))
}

/// Restriction of `yᵀMy` to the plane `y_k = s·y₀`, in the variables
/// `(y₀, y_a, y_b)`.
fn restricted_conic(m: &[[BigInt; 4]; 4], k: usize, s: &BigInt) -> Ternary {
    let others: Vec<usize> = (1..4).filter(|&i| i != k).collect();
    // columns of the 4×3 substitution matrix
    let mut l: [[BigInt; 3]; 4] = Default::default();
    l[0][0] = BigInt::one();
    l[k][0] = s.clone();
    l[others[0]][1] = BigInt::one();
    l[others[1]][2] = BigInt::one();
    let mut f = Ternary::default();
    for u in 0..3 {
        for v in u..3 {
            let mut c = BigInt::zero();
            for i in 0..4 {
                for j in 0..4 {
                    c += &l[i][u] * &m[i][j] * &l[j][v];
                }
            }
            if u != v {
                c *= 2;
            }
            let mut e = [0u8; 3];
            e[u] += 1;
            e[v] += 1;
            f.add_assign(&Ternary(std::iter::once((e, c)).collect()), false);
        }
    }
    f
}

const CONIC_MONOMIALS: [[u8; 3]; 6] = [
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
];

fn det3_ternary(m: &[[Ternary; 3]; 3]) -> Ternary {
    let mut out = Ternary::default();
    for (p, sign) in [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
        ([1, 0, 2], true),
    ] {
        let t = m[0][p[0]].mul(&m[1][p[1]]).mul(&m[2][p[2]]);
        out.add_assign(&t, sign);
    }
    out
}

/// A nonzero multiple of the resultant of three ternary conics: the 6×6
/// determinant of the conics together with the partials of their Jacobian.
fn conic_resultant(f: &[Ternary; 3]) -> BigInt {
    let grads: [[Ternary; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|k| f[i].derivative(k)));
    let jac = det3_ternary(&grads);
    let rows: Vec<Vec<BigInt>> = f
        .iter()
        .cloned()
        .chain((0..3).map(|k| jac.derivative(k)))
        .map(|g| CONIC_MONOMIALS.iter().map(|e| g.coefficient(*e)).collect())
        .collect();
    det_int(&rows)
}

fn random_change(rng: &mut ChaCha8Rng) -> [[BigInt; 4]; 4] {
    loop {
        let b: [[BigInt; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| BigInt::from(rng.gen_range(-4i64..=4))));
        let rows: Vec<Vec<BigInt>> = b.iter().map(|r| r.to_vec()).collect();
        if !det_int(&rows).is_zero() {
            return b;
        }
    }
}

enum Attempt {
    Found([Rational; 3]),
    Vanishing,
    Collision,
    Retry,
}

/// One elimination pass in the coordinates `y` with `x = B y`.
fn eliminate(mats: &[[[BigInt; 4]; 4]; 3], known: &[[BigInt; 4]]) -> Attempt {
    let mut values = [rat(0), rat(0), rat(0)];
    let mut vanishing = false;
    for k in 1..4 {
        // the pencil parameter of each known point
        let mut roots: Vec<Rational> = Vec::with_capacity(known.len());
        for y in known {
            if y[0].is_zero() {
                return Attempt::Retry;
            }
            let r = Rational::new(y[k].clone(), y[0].clone());
            if roots.contains(&r) {
                return Attempt::Retry;
            }
            roots.push(r);
        }
        let xs: Vec<Rational> = (0..SAMPLE_VALUES).map(rat).collect();
        let ys: Vec<Rational> = (0..SAMPLE_VALUES)
            .map(|s| {
                let s = BigInt::from(s);
                let conics: [Ternary; 3] =
                    std::array::from_fn(|i| restricted_conic(&mats[i], k, &s));
                Rational::from_integer(conic_resultant(&conics))
            })
            .collect();
        let eliminant = Poly::interpolate(&xs, &ys);
        match eliminant.degree() {
            None => {
                vanishing = true;
                continue;
            }
            Some(8) => {}
            Some(_) => return Attempt::Retry,
        }
        let mut known_factor = Poly(vec![rat(1)]);
        for r in &roots {
            known_factor = known_factor.mul(&Poly::linear_factor(r));
        }
        let (quot, rem) = eliminant.div_rem(&known_factor);
        if !rem.is_zero() || quot.degree() != Some(1) {
            return Attempt::Retry;
        }
        let root = -&quot.0[0] / &quot.0[1];
        if roots.contains(&root) {
            return Attempt::Collision;
        }
        values[k - 1] = root;
    }
    if vanishing {
        Attempt::Vanishing
    } else {
        Attempt::Found(values)
    }
}

/// The eighth base point of the net through seven given points.
///
/// A random integer change of coordinates puts the points
/// in general position with respect to the planes `y_k = s·y₀`; along each
/// of the three pencils the restricted conics have a common zero exactly at
/// the parameters of the base points, which are read off as roots of a
/// degree-8 eliminant.
pub fn complete_octad(points: &[ProjPoint]) -> Result<ProjPoint, GeometryError> {
    let net = net_through(points)?;
    let mut vanishing = 0;
    let mut collisions = 0;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0c7a_d000 + attempt);
        let b = random_change(&mut rng);
        let adj = adjugate(&b);
        let mats: [[[BigInt; 4]; 4]; 3] =
            std::array::from_fn(|i| congruent(net.generators()[i].matrix(), &b));
        let known: Vec<[BigInt; 4]> = points.iter().map(|p| mat_vec(&adj, p.coords())).collect();
        match eliminate(&mats, &known) {
            Attempt::Found(v) => {
                let y = [rat(1), v[0].clone(), v[1].clone(), v[2].clone()];
                let y = primitive(&y).expect("nonzero");
                let y: [BigInt; 4] = [y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone()];
                let p = ProjPoint::from_ints(mat_vec(&b, &y))?;
                if net.contains(&p) && !points.contains(&p) {
                    return Ok(p);
                }
            }
            Attempt::Vanishing => {
                vanishing += 1;
                if vanishing >= 3 {
                    return Err(GeometryError::NotZeroDimensional);
                }
            }
            Attempt::Collision => collisions += 1,
            Attempt::Retry => {}
        }
    }
    if collisions > 0 {
        Err(GeometryError::MultiplePoint)
    } else {
        Err(GeometryError::NotZeroDimensional)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OctadClass {
    RegularCandidate,
    FourCollisionWall,
    Invalid,
}

impl fmt::Display for OctadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OctadClass::RegularCandidate => "regular-candidate",
            OctadClass::FourCollisionWall => "four-collision-wall",
            OctadClass::Invalid => "invalid",
        })
    }
}

/// Outcome of the point-decidable checks on an 8-point configuration.
///
/// Nonsingularity of the Hessian and zero-dimensionality of the base locus
/// are not certified here; a regular candidate is an octad that passes
/// every test decidable from the points alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctadReport {
    pub distinct: bool,
    pub net_rank: usize,
    pub coplanar_quadruples: Vec<[usize; 4]>,
    pub m_octad: bool,
    pub classification: OctadClass,
}

pub fn verify_octad(points: &[ProjPoint]) -> Result<OctadReport, GeometryError> {
    if points.len() != 8 {
        return Err(GeometryError::BadInput(format!(
            "expected 8 points, got {}",
            points.len()
        )));
    }
    let distinct = (0..8).all(|i| (i + 1..8).all(|j| points[i] != points[j]));
    let net_rank = rank(&evaluation_matrix(points));
    let mut quads = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    if coplanar(&points[a], &points[b], &points[c], &points[d]) {
                        quads.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let complementary = quads.len() == 2 && {
        let mut all: Vec<usize> = quads.iter().flatten().copied().collect();
        all.sort_unstable();
        all == (0..8).collect::<Vec<_>>()
    };
    let classification = if !distinct || net_rank != 7 {
        OctadClass::Invalid
    } else if quads.is_empty() {
        OctadClass::RegularCandidate
    } else if complementary {
        OctadClass::FourCollisionWall
    } else {
        OctadClass::Invalid
    };
    Ok(OctadReport {
        distinct,
        net_rank,
        coplanar_quadruples: quads,
        m_octad: true,
        classification,
    })
}

fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        out.push((p, inversions % 2 == 1));
                    }
                }
            }
        }
    }
    out
}

fn quartic_from_ternary(t: &Ternary) -> QuarticForm {
    QuarticForm::new(QUARTIC_EXPONENTS.map(|e| Rational::from_integer(t.coefficient(e))))
}

/// `det(t₀M₀ + t₁M₁ + t₂M₂)` by expansion over the 24 permutations.
pub fn hessian(net: &NetOfQuadrics) -> QuarticForm {
    let g = net.generators();
    let entry = |i: usize, j: usize| {
        Ternary::linear([
            g[0].matrix()[i][j].clone(),
            g[1].matrix()[i][j].clone(),
            g[2].matrix()[i][j].clone(),
        ])
    };
    let mut det = Ternary::default();
    for (p, odd) in permutations4() {
        let mut term = Ternary::constant(BigInt::one());
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&entry(i, j));
        }
        det.add_assign(&term, odd);
    }
    quartic_from_ternary(&det)
}

/// The same determinant, recovered from its values at the 15 points
/// `(1, i, j)` with `i + j ≤ 4` by an exact linear solve.
pub fn hessian_by_interpolation(net: &NetOfQuadrics) -> QuarticForm {
    let g = net.generators();
    let mut nodes = Vec::new();
    for i in 0..=4i64 {
        for j in 0..=4 - i {
            nodes.push([1i64, i, j]);
        }
    }
    let mut rows = Vec::with_capacity(15);
    let mut values = Vec::with_capacity(15);
    for t in &nodes {
        let m: Vec<Vec<BigInt>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| (0..3).map(|k| &g[k].matrix()[i][j] * t[k]).sum())
                    .collect()
            })
            .collect();
        values.push(Rational::from_integer(det_int(&m)));
        rows.push(
            QUARTIC_EXPONENTS
                .iter()
                .map(|e| {
                    let mut v = 1i64;
                    for k in 0..3 {
                        v *= t[k].pow(e[k] as u32);
                    }
                    rat(v)
                })
                .collect(),
        );
    }
    let c = solve(&rows, &values).expect("interpolation nodes are unisolvent");
    QuarticForm::new(std::array::from_fn(|k| c[k].clone()))
}

/// The line `{t : Q_t vanishes on the line pq}` in the plane of the net,
/// returned as primitive coefficients `λ` of `λ₀t₀ + λ₁t₁ + λ₂t₂ = 0`.
pub fn bitangent_pencil(
    net: &NetOfQuadrics,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<[BigInt; 3], GeometryError> {
    if p == q {
        return Err(GeometryError::BadInput("the two points coincide".into()));
    }
    if !net.contains(p) || !net.contains(q) {
        return Err(GeometryError::NotOnBase);
    }
    let lambda: Vec<Rational> = net
        .generators()
        .iter()
        .map(|g| Rational::from_integer(g.bilinear(p, q)))
        .collect();
    let l = primitive(&lambda).ok_or_else(|| {
        GeometryError::Degenerate("every quadric of the net contains the line".into())
    })?;
    Ok([l[0].clone(), l[1].clone(), l[2].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cube() -> Vec<ProjPoint> {
        let mut v = Vec::new();
        for x in [1, -1] {
            for y in [1, -1] {
                for z in [1, -1] {
                    v.push(ProjPoint::new([x, y, z, 1]).unwrap());
                }
            }
        }
        v
    }

    fn cube_net() -> NetOfQuadrics {
        let q = |k: usize| {
            let mut m = [[0i64; 4]; 4];
            m[k][k] = 1;
            m[3][3] = -1;
            QuadricForm::from_ints(m).unwrap()
        };
        NetOfQuadrics::new([q(0), q(1), q(2)]).unwrap()
    }

    #[test]
    fn coplanarity_examples() {
        let e = |i: usize| {
            let mut v = [0i64; 4];
            v[i] = 1;
            ProjPoint::new(v).unwrap()
        };
        let e12 = ProjPoint::new([1, 1, 0, 0]).unwrap();
        assert!(coplanar(&e(0), &e(1), &e(2), &e12));
        assert!(!coplanar(&e(0), &e(1), &e(2), &e(3)));
        let c = |v| ProjPoint::new(v).unwrap();
        assert!(coplanar(
            &c([1, 1, 1, 1]),
            &c([1, 1, -1, 1]),
            &c([1, -1, 1, 1]),
            &c([1, -1, -1, 1])
        ));
    }

    #[test]
    fn cube_net_contains_the_coordinate_differences() {
        let pts: Vec<ProjPoint> = cube().into_iter().take(7).collect();
        let net = net_through(&pts).unwrap();
        for g in cube_net().generators() {
            // g lies in the span of the computed generators
            let mut rows: Vec<Vec<Rational>> = net
                .generators()
                .iter()
                .map(|h| h.matrix().iter().flatten().map(|x| Rational::from_integer(x.clone())).collect())
                .collect();
            rows.push(g.matrix().iter().flatten().map(|x| Rational::from_integer(x.clone())).collect());
            assert_eq!(rank(&rows), 3);
        }
        for p in &pts {
            assert!(net.contains(p));
        }
    }

    #[test]
    fn coordinate_points_force_zero_diagonal() {
        let pts: Vec<ProjPoint> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 1, 1, 1],
            [1, 2, 3, 4],
            [2, -1, 5, 3],
        ]
        .iter()
        .map(|v| ProjPoint::new(*v).unwrap())
        .collect();
        let net = net_through(&pts).unwrap();
        for g in net.generators() {
            for i in 0..4 {
                assert!(g.matrix()[i][i].is_zero());
            }
        }
    }

    #[test]
    fn six_coplanar_points_on_a_conic_are_degenerate() {
        let pts: Vec<ProjPoint> = [
            [3, 4, 0, 1],
            [4, 3, 0, 1],
            [5, 0, 0, 1],
            [0, 5, 0, 1],
            [-3, 4, 0, 1],
            [-4, -3, 0, 1],
            [1, 2, 3, 1],
        ]
        .iter()
        .map(|v| ProjPoint::new(*v).unwrap())
        .collect();
        assert!(matches!(
            net_through(&pts),
            Err(GeometryError::DegenerateInput(_))
        ));
    }

    #[test]
    fn cube_completion() {
        let c = cube();
        let missing = ProjPoint::new([-1, -1, -1, 1]).unwrap();
        let seven: Vec<ProjPoint> = c.iter().filter(|p| **p != missing).cloned().collect();
        assert_eq!(complete_octad(&seven).unwrap(), missing);
    }

    #[test]
    fn repeated_point_is_degenerate() {
        let mut seven: Vec<ProjPoint> = cube().into_iter().take(6).collect();
        seven.push(seven[0].clone());
        assert!(matches!(
            complete_octad(&seven),
            Err(GeometryError::DegenerateInput(_))
        ));
    }

    #[test]
    fn full_cube_is_not_regular() {
        let r = verify_octad(&cube()).unwrap();
        assert!(r.coplanar_quadruples.len() >= 6);
        assert_eq!(r.classification, OctadClass::Invalid);
    }

    #[test]
    fn cube_hessian_splits_into_four_lines() {
        let net = cube_net();
        let h = hessian(&net);
        // -t0 t1 t2 (t0 + t1 + t2)
        let mut expect = [0i64; 15];
        for (k, e) in QUARTIC_EXPONENTS.iter().enumerate() {
            if [[2, 1, 1], [1, 2, 1], [1, 1, 2]].contains(e) {
                expect[k] = -1;
            }
        }
        assert_eq!(h, QuarticForm::from_ints(expect));
        assert_eq!(hessian_by_interpolation(&net), h);
    }

    #[test]
    fn hessian_evaluation_consistency() {
        let pts: Vec<ProjPoint> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 1, 1, 1],
            [1, 2, 3, 4],
            [2, -1, 5, 3],
        ]
        .iter()
        .map(|v| ProjPoint::new(*v).unwrap())
        .collect();
        let net = net_through(&pts).unwrap();
        let h = hessian(&net);
        assert_eq!(h, hessian_by_interpolation(&net));
        let sum: Vec<Vec<BigInt>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| net.generators().iter().map(|g| g.matrix()[i][j].clone()).sum())
                    .collect()
            })
            .collect();
        assert_eq!(
            h.eval(&[rat(1), rat(1), rat(1)]),
            Rational::from_integer(det_int(&sum))
        );
    }

    #[test]
    fn cube_bitangent() {
        let net = cube_net();
        let p = ProjPoint::new([1, 1, 1, 1]).unwrap();
        let q = ProjPoint::new([-1, -1, -1, 1]).unwrap();
        let l = bitangent_pencil(&net, &p, &q).unwrap();
        assert_eq!(l, [1, 1, 1].map(BigInt::from));
        assert!(matches!(
            bitangent_pencil(&net, &p, &p),
            Err(GeometryError::BadInput(_))
        ));
        let off = ProjPoint::new([1, 2, 3, 4]).unwrap();
        assert_eq!(
            bitangent_pencil(&net, &p, &off),
            Err(GeometryError::NotOnBase)
        );
    }
}
