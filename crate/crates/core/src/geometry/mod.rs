//! Exact projective geometry of point configurations in RP³.
//!
//! Points, quadrics and quartics carry integer or rational coordinates and
//! every predicate is decided by exact arithmetic. The only heuristic piece
//! is [`count_ovals`], which samples exact signs on a finite grid.

pub mod chirality;
pub mod config;
pub mod linalg;
mod net;
mod ovals;
pub mod poly;
pub mod samples;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use chirality::{octad_signs, sign6, sign7, triple_link, OctadSigns};
pub use net::{
    bitangent_pencil, complete_octad, coplanar, hessian, hessian_by_interpolation, net_through,
    verify_octad, OctadClass, OctadReport,
};
pub use ovals::{count_ovals, OvalCount, DEFAULT_DEPTH};

use linalg::{normalize_int, primitive, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("base locus of the net is not zero-dimensional")]
    NotZeroDimensional,
    #[error("the eighth base point coincides with a given point")]
    MultiplePoint,
    #[error("point is not on the base locus of the net")]
    NotOnBase,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("lines are not pairwise skew")]
    NotSkew,
    #[error("configuration has four coplanar points")]
    NotSimple,
    #[error("octad is not a regular candidate ({0})")]
    NotRegular(OctadClass),
    #[error("per-point signs disagree: {0:?}")]
    Inconsistent(Vec<i8>),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl GeometryError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            GeometryError::DegenerateInput(_) => "degenerate-input",
            GeometryError::NotZeroDimensional => "not-zero-dimensional",
            GeometryError::MultiplePoint => "multiple-point",
            GeometryError::NotOnBase => "not-on-base",
            GeometryError::Degenerate(_) => "degenerate",
            GeometryError::NotSkew => "not-skew",
            GeometryError::NotSimple => "not-simple",
            GeometryError::NotRegular(_) => "not-regular",
            GeometryError::Inconsistent(_) => "inconsistent",
            GeometryError::BadInput(_) => "bad-input",
            GeometryError::Parse { .. } => "parse",
        }
    }
}

/// A point of RP³ as a primitive integer vector whose first nonzero entry
/// is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([BigInt; 4]);

impl ProjPoint {
    pub fn from_ints(v: [BigInt; 4]) -> Result<Self, GeometryError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(GeometryError::BadInput("zero vector".into()));
        }
        let n = normalize_int(v.to_vec());
        Ok(ProjPoint([n[0].clone(), n[1].clone(), n[2].clone(), n[3].clone()]))
    }

    pub fn new(v: [i64; 4]) -> Result<Self, GeometryError> {
        Self::from_ints(v.map(BigInt::from))
    }

    pub fn from_rationals(v: &[Rational]) -> Result<Self, GeometryError> {
        if v.len() != 4 {
            return Err(GeometryError::BadInput(format!(
                "expected 4 coordinates, got {}",
                v.len()
            )));
        }
        let p = primitive(v).ok_or_else(|| GeometryError::BadInput("zero vector".into()))?;
        Self::from_ints([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.0
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    /// Negates the first coordinate: a fixed orientation-reversing map.
    pub fn mirrored(&self) -> ProjPoint {
        let mut v = self.0.clone();
        v[0] = -&v[0];
        ProjPoint::from_ints(v).expect("nonzero")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{}:{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

/// Symmetric 4×4 form `xᵀMx`, kept as a primitive integer matrix with
/// first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadricForm([[BigInt; 4]; 4]);

impl QuadricForm {
    pub fn from_matrix(m: [[BigInt; 4]; 4]) -> Result<Self, GeometryError> {
        for i in 0..4 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(GeometryError::BadInput("matrix is not symmetric".into()));
                }
            }
        }
        let flat: Vec<BigInt> = m.iter().flatten().cloned().collect();
        if flat.iter().all(|x| x.is_zero()) {
            return Err(GeometryError::BadInput("zero quadric".into()));
        }
        let n = normalize_int(flat);
        let mut out: [[BigInt; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = n[4 * i + j].clone();
            }
        }
        Ok(QuadricForm(out))
    }

    pub fn from_ints(m: [[i64; 4]; 4]) -> Result<Self, GeometryError> {
        Self::from_matrix(m.map(|r| r.map(BigInt::from)))
    }

    pub fn matrix(&self) -> &[[BigInt; 4]; 4] {
        &self.0
    }

    pub fn bilinear(&self, p: &ProjPoint, q: &ProjPoint) -> BigInt {
        let (p, q) = (p.coords(), q.coords());
        let mut s = BigInt::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !self.0[i][j].is_zero() {
                    s += &self.0[i][j] * &p[i] * &q[j];
                }
            }
        }
        s
    }

    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        self.bilinear(p, p)
    }
}

impl fmt::Debug for QuadricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Serialize for QuadricForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        v.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetOfQuadrics {
    generators: [QuadricForm; 3],
}

impl NetOfQuadrics {
    /// Checks linear independence of the three generators.
    pub fn new(generators: [QuadricForm; 3]) -> Result<Self, GeometryError> {
        let rows: Vec<Vec<Rational>> = generators
            .iter()
            .map(|g| {
                g.0.iter()
                    .flatten()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        if linalg::rank(&rows) != 3 {
            return Err(GeometryError::DegenerateInput(
                "generators are linearly dependent".into(),
            ));
        }
        Ok(NetOfQuadrics { generators })
    }

    pub fn generators(&self) -> &[QuadricForm; 3] {
        &self.generators
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.generators.iter().all(|g| g.eval(p).is_zero())
    }
}

/// Exponents of the 15 quartic monomials in `t₀,t₁,t₂`, lexicographically
/// descending.
pub const QUARTIC_EXPONENTS: [[u8; 3]; 15] = [
    [4, 0, 0],
    [3, 1, 0],
    [3, 0, 1],
    [2, 2, 0],
    [2, 1, 1],
    [2, 0, 2],
    [1, 3, 0],
    [1, 2, 1],
    [1, 1, 2],
    [1, 0, 3],
    [0, 4, 0],
    [0, 3, 1],
    [0, 2, 2],
    [0, 1, 3],
    [0, 0, 4],
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuarticForm([Rational; 15]);

impl QuarticForm {
    pub fn new(coeffs: [Rational; 15]) -> Self {
        QuarticForm(coeffs)
    }

    pub fn from_ints(coeffs: [i64; 15]) -> Self {
        QuarticForm(coeffs.map(linalg::rat))
    }

    pub fn coefficients(&self) -> &[Rational; 15] {
        &self.0
    }

    pub fn coefficient(&self, e: [u8; 3]) -> Rational {
        let k = QUARTIC_EXPONENTS.iter().position(|x| *x == e).expect("degree 4");
        self.0[k].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, t: &[Rational; 3]) -> Rational {
        QUARTIC_EXPONENTS
            .iter()
            .zip(&self.0)
            .map(|(e, c)| {
                let mut v = c.clone();
                for k in 0..3 {
                    for _ in 0..e[k] {
                        v *= &t[k];
                    }
                }
                v
            })
            .sum()
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn canonical(&self) -> Option<Vec<BigInt>> {
        primitive(&self.0)
    }

    /// Projectively equal forms.
    pub fn same_curve(&self, other: &QuarticForm) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn scaled(&self, c: &Rational) -> QuarticForm {
        QuarticForm(self.0.clone().map(|x| x * c))
    }
}

impl fmt::Debug for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in QUARTIC_EXPONENTS.iter().zip(&self.0) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono: Vec<String> = (0..3)
                .filter(|&k| e[k] > 0)
                .map(|k| {
                    if e[k] == 1 {
                        format!("t{k}")
                    } else {
                        format!("t{k}^{}", e[k])
                    }
                })
                .collect();
            if a != linalg::rat(1) {
                write!(f, "{a}")?;
                if !mono.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", mono.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for QuarticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}
