//! Linear algebra over Z/2 on the rank-6 homology model of an M-quartic.
//!
//! Vectors are packed into the low six bits of a `u8` in the fixed basis
//! order `(a1, a2, a3, b1, b2, b3)`: bit `i` is the coordinate on basis
//! vector `i`. The oval classes are `a1..a3` with `a0 = a1 + a2 + a3`, the
//! bridge classes `b_{0i}` are `b1..b3` with `b_{ij} = b_i + b_j`. The
//! intersection form pairs `a_i` with `b_j` by `delta_ij` and makes both
//! halves isotropic.

use std::fmt;

use thiserror::Error;

/// Number of basis vectors.
pub const RANK: usize = 6;
/// Number of vectors in the space.
pub const SPACE_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("no isometry exists: {0}")]
    NoIsometry(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("enumeration of {needed} isometries exceeds the materialization limit of {limit}")]
    ResourceLimit { needed: usize, limit: usize },
}

/// A vector of the 6-dimensional Z/2 space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F2Vector(u8);

impl F2Vector {
    pub const ZERO: F2Vector = F2Vector(0);

    /// Builds a vector from its packed bits; bits above the sixth are rejected.
    pub fn new(bits: u8) -> Result<Self, F2Error> {
        if bits >= SPACE_SIZE as u8 {
            return Err(F2Error::BadInput(format!("{bits} does not fit in 6 bits")));
        }
        Ok(F2Vector(bits))
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn basis(i: usize) -> Self {
        F2Vector(1 << i)
    }

    /// Oval class `a_i`, `i` in `0..4`.
    pub fn oval(i: usize) -> Self {
        match i {
            0 => F2Vector(0b000_111),
            1..=3 => F2Vector(1 << (i - 1)),
            _ => panic!("oval index {i} out of range"),
        }
    }

    /// Bridge class `b_{ij}` joining ovals `i` and `j` (order irrelevant).
    pub fn bridge(i: usize, j: usize) -> Self {
        assert!(i < 4 && j < 4 && i != j, "bad bridge ({i},{j})");
        let b0 = |k: usize| if k == 0 { 0 } else { 1u8 << (2 + k) };
        F2Vector(b0(i) ^ b0(j))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coordinates in basis order.
    pub fn coords(self) -> [u8; RANK] {
        std::array::from_fn(|i| (self.0 >> i) & 1)
    }

    pub fn all() -> impl Iterator<Item = F2Vector> {
        (0..SPACE_SIZE as u8).map(F2Vector)
    }

    pub fn nonzero() -> impl Iterator<Item = F2Vector> {
        (1..SPACE_SIZE as u8).map(F2Vector)
    }
}

impl std::ops::Add for F2Vector {
    type Output = F2Vector;
    fn add(self, rhs: F2Vector) -> F2Vector {
        F2Vector(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for F2Vector {
    fn add_assign(&mut self, rhs: F2Vector) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "F2Vector[{}{}{}|{}{}{}]", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

/// The symplectic pairing.
pub fn dot(u: F2Vector, v: F2Vector) -> u8 {
    // a-part of u against b-part of v plus b-part of u against a-part of v
    let cross = ((u.0 & 0b111) & (v.0 >> 3)) ^ ((u.0 >> 3) & (v.0 & 0b111));
    (cross.count_ones() & 1) as u8
}

/// `x + (x . v) v`
pub fn transvection(v: F2Vector, x: F2Vector) -> F2Vector {
    if dot(x, v) == 1 {
        x + v
    } else {
        x
    }
}

/// A quadratic refinement of the intersection form, stored as its values
/// on the basis: `[[q(a1), q(a2), q(a3)], [q(b1), q(b2), q(b3)]]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticFunction {
    basis_values: u8,
    table: u64,
}

impl QuadraticFunction {
    pub fn from_matrix(m: [[u8; 3]; 2]) -> Result<Self, F2Error> {
        let mut bits = 0u8;
        for (r, row) in m.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => bits |= 1 << (3 * r + c),
                    _ => return Err(F2Error::BadInput(format!("matrix entry {x} is not a bit"))),
                }
            }
        }
        Ok(Self::from_basis_values(bits))
    }

    /// Packed basis values, bit `i` = `q(e_i)`.
    pub fn from_basis_values(bits: u8) -> Self {
        let bits = bits & 0x3f;
        let mut table = 0u64;
        // q(x + e_i) = q(x) + q(e_i) + x . e_i, filled in by increasing x
        for x in 1..SPACE_SIZE as u8 {
            let low = x.trailing_zeros() as usize;
            let rest = F2Vector(x & (x - 1));
            let e = F2Vector::basis(low);
            let qr = (table >> rest.0) & 1;
            let val = qr as u8 ^ ((bits >> low) & 1) ^ dot(rest, e);
            table |= (val as u64) << x;
        }
        QuadraticFunction {
            basis_values: bits,
            table,
        }
    }

    /// Parses six bits written row-major, e.g. `"000101"`.
    pub fn parse_bits(s: &str) -> Result<Self, F2Error> {
        let s = s.trim();
        if s.len() != RANK || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(F2Error::BadInput(format!(
                "expected six binary digits, got {s:?}"
            )));
        }
        let mut bits = 0u8;
        for (i, c) in s.chars().enumerate() {
            if c == '1' {
                bits |= 1 << i;
            }
        }
        Ok(Self::from_basis_values(bits))
    }

    pub fn basis_values(&self) -> u8 {
        self.basis_values
    }

    pub fn matrix(&self) -> [[u8; 3]; 2] {
        let b = self.basis_values;
        [
            [b & 1, (b >> 1) & 1, (b >> 2) & 1],
            [(b >> 3) & 1, (b >> 4) & 1, (b >> 5) & 1],
        ]
    }

    /// Row-major bit string.
    pub fn bit_string(&self) -> String {
        (0..RANK)
            .map(|i| if (self.basis_values >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn eval(&self, v: F2Vector) -> u8 {
        ((self.table >> v.0) & 1) as u8
    }

    /// `q + w*`, i.e. `x -> q(x) + w . x`. Every refinement of the form
    /// arises this way from a fixed one.
    pub fn shifted(&self, w: F2Vector) -> QuadraticFunction {
        let mut bits = self.basis_values;
        for i in 0..RANK {
            bits ^= dot(w, F2Vector::basis(i)) << i;
        }
        QuadraticFunction::from_basis_values(bits)
    }

    /// The unique `w` with `other = self + w*`.
    pub fn difference(&self, other: &QuadraticFunction) -> F2Vector {
        let delta = self.basis_values ^ other.basis_values;
        // w . a_i = delta on a_i means w has b_i-coordinate delta_i, and vice versa
        F2Vector(((delta & 0b111) << 3) | (delta >> 3))
    }

    /// `x -> q(g x)`.
    pub fn pullback(&self, g: &Isometry) -> QuadraticFunction {
        let mut bits = 0u8;
        for i in 0..RANK {
            bits |= self.eval(g.cols[i]) << i;
        }
        QuadraticFunction::from_basis_values(bits)
    }

    pub fn all() -> impl Iterator<Item = QuadraticFunction> {
        (0..SPACE_SIZE as u8).map(QuadraticFunction::from_basis_values)
    }

    pub fn count_zeros(&self) -> usize {
        SPACE_SIZE - self.table.count_ones() as usize
    }
}

impl fmt::Debug for QuadraticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.matrix();
        write!(f, "Q{:?}", m)
    }
}

pub fn q_eval(q: &QuadraticFunction, v: F2Vector) -> u8 {
    q.eval(v)
}

/// Arf invariant as the sum of products of the paired basis values.
pub fn arf(q: &QuadraticFunction) -> u8 {
    let m = q.matrix();
    (0..3).fold(0, |acc, i| acc ^ (m[0][i] & m[1][i]))
}

/// A linear automorphism of the space, stored by the images of the basis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    cols: [F2Vector; RANK],
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            cols: std::array::from_fn(F2Vector::basis),
        }
    }

    /// Checks invertibility and preservation of the form.
    pub fn from_columns(cols: [F2Vector; RANK]) -> Result<Self, F2Error> {
        for i in 0..RANK {
            for j in 0..RANK {
                let want = dot(F2Vector::basis(i), F2Vector::basis(j));
                if dot(cols[i], cols[j]) != want {
                    return Err(F2Error::BadInput(format!(
                        "columns {i},{j} do not preserve the intersection form"
                    )));
                }
            }
        }
        Ok(Isometry { cols })
    }

    pub(crate) fn from_columns_unchecked(cols: [F2Vector; RANK]) -> Self {
        Isometry { cols }
    }

    pub fn transvection(v: F2Vector) -> Self {
        Isometry {
            cols: std::array::from_fn(|i| transvection(v, F2Vector::basis(i))),
        }
    }

    pub fn columns(&self) -> &[F2Vector; RANK] {
        &self.cols
    }

    pub fn apply(&self, x: F2Vector) -> F2Vector {
        let mut out = F2Vector::ZERO;
        for i in 0..RANK {
            if (x.0 >> i) & 1 == 1 {
                out += self.cols[i];
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            cols: std::array::from_fn(|i| self.apply(other.cols[i])),
        }
    }

    pub fn inverse(&self) -> Isometry {
        // symplectic: g^{-1}(y) has coordinate i equal to y . g(e_i^dual)
        let mut cols = [F2Vector::ZERO; RANK];
        for (j, col) in cols.iter_mut().enumerate() {
            let y = F2Vector::basis(j);
            let mut bits = 0u8;
            for i in 0..RANK {
                // dual of a_i is b_i and vice versa
                let dual = if i < 3 { i + 3 } else { i - 3 };
                bits |= dot(y, self.cols[dual]) << i;
            }
            *col = F2Vector(bits);
        }
        Isometry { cols }
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity()
    }

    pub fn preserves(&self, q: &QuadraticFunction) -> bool {
        q.pullback(self) == *q
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.cols.iter().map(|c| c.bits()))
            .finish()
    }
}

/// Order of `Sp(6, 2)`.
pub const SYMPLECTIC_GROUP_ORDER: usize = 1_451_520;
/// Order of the stabilizer of an even quadratic function.
pub const EVEN_STABILIZER_ORDER: usize = 40_320;

/// Visits every isometry (preserving `q` when given) in lexicographic
/// order of the column tuple. Returns the number visited.
pub fn for_each_isometry<F>(q: Option<&QuadraticFunction>, mut visit: F) -> usize
where
    F: FnMut(&Isometry),
{
    let mut cols = [F2Vector::ZERO; RANK];
    let mut count = 0usize;
    backtrack(0, &mut cols, &|_, i, v| match q {
        Some(q) => q.eval(v) == q.eval(F2Vector::basis(i)),
        None => true,
    }, &mut |cols| {
        count += 1;
        visit(&Isometry { cols: *cols });
    });
    count
}

fn backtrack<P, V>(depth: usize, cols: &mut [F2Vector; RANK], accept: &P, visit: &mut V)
where
    P: Fn(&[F2Vector; RANK], usize, F2Vector) -> bool,
    V: FnMut(&[F2Vector; RANK]),
{
    if depth == RANK {
        visit(cols);
        return;
    }
    let e = F2Vector::basis(depth);
    'cand: for v in F2Vector::nonzero() {
        for j in 0..depth {
            if dot(cols[j], v) != dot(F2Vector::basis(j), e) {
                continue 'cand;
            }
        }
        // nondegenerate Gram data forces independence, but an isotropic
        // candidate can still repeat an earlier column
        if cols[..depth].contains(&v) {
            continue;
        }
        if !accept(cols, depth, v) {
            continue;
        }
        cols[depth] = v;
        backtrack(depth + 1, cols, accept, visit);
    }
}

/// Materializes the isometry group (or the stabilizer of `q`), refusing
/// when the group is larger than `limit`.
pub fn isometry_group(
    q: Option<&QuadraticFunction>,
    limit: usize,
) -> Result<Vec<Isometry>, F2Error> {
    let needed = match q {
        None => SYMPLECTIC_GROUP_ORDER,
        Some(q) if arf(q) == 0 => EVEN_STABILIZER_ORDER,
        // stabilizer of an odd refinement: 36 * 8! / 28
        Some(_) => SYMPLECTIC_GROUP_ORDER / 28,
    };
    if needed > limit {
        return Err(F2Error::ResourceLimit { needed, limit });
    }
    let mut out = Vec::with_capacity(needed);
    for_each_isometry(q, |g| out.push(*g));
    Ok(out)
}

/// Gram and quadratic data of six vectors in an abstract Z/2 space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFrame {
    pub gram: [[u8; RANK]; RANK],
    pub q_values: [u8; RANK],
}

impl SourceFrame {
    /// The standard basis carrying the values of `q`.
    pub fn standard(q: &QuadraticFunction) -> Self {
        SourceFrame {
            gram: std::array::from_fn(|i| {
                std::array::from_fn(|j| dot(F2Vector::basis(i), F2Vector::basis(j)))
            }),
            q_values: std::array::from_fn(|i| q.eval(F2Vector::basis(i))),
        }
    }

    fn validate(&self) -> Result<(), F2Error> {
        for i in 0..RANK {
            if self.q_values[i] > 1 {
                return Err(F2Error::BadInput("q-value is not a bit".into()));
            }
            if self.gram[i][i] != 0 {
                return Err(F2Error::BadInput(format!(
                    "self-product of vector {i} must vanish"
                )));
            }
            for j in 0..RANK {
                if self.gram[i][j] > 1 || self.gram[i][j] != self.gram[j][i] {
                    return Err(F2Error::BadInput(format!(
                        "gram entry ({i},{j}) is not a symmetric bit"
                    )));
                }
            }
        }
        if gf2_rank(&self.gram) != RANK {
            return Err(F2Error::BadInput("gram matrix is degenerate".into()));
        }
        Ok(())
    }

    /// Value of the extended quadratic function on the combination `coeffs`.
    fn q_of_combination(&self, coeffs: u8) -> u8 {
        let mut val = 0u8;
        for i in 0..RANK {
            if (coeffs >> i) & 1 == 0 {
                continue;
            }
            val ^= self.q_values[i];
            for j in (i + 1)..RANK {
                if (coeffs >> j) & 1 == 1 {
                    val ^= self.gram[i][j];
                }
            }
        }
        val
    }

    /// Arf invariant by majority vote: an even refinement on a rank-6 space
    /// has 36 zeros, an odd one 28.
    pub fn arf(&self) -> u8 {
        let zeros = (0..SPACE_SIZE as u8)
            .filter(|&c| self.q_of_combination(c) == 0)
            .count();
        if zeros == 36 {
            0
        } else {
            1
        }
    }
}

fn gf2_rank(rows: &[[u8; RANK]; RANK]) -> usize {
    let mut packed: Vec<u8> = rows
        .iter()
        .map(|r| r.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << i)))
        .collect();
    let mut rank = 0;
    for bit in 0..RANK {
        let Some(p) = (rank..packed.len()).find(|&r| (packed[r] >> bit) & 1 == 1) else {
            continue;
        };
        packed.swap(rank, p);
        for r in 0..packed.len() {
            if r != rank && (packed[r] >> bit) & 1 == 1 {
                packed[r] ^= packed[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Finds images `v_0..v_5` of the source vectors with matching pairwise
/// products and `target`-values. The returned columns are the
/// lexicographically smallest such tuple.
pub fn find_isometry(
    source: &SourceFrame,
    target: &QuadraticFunction,
) -> Result<[F2Vector; RANK], F2Error> {
    source.validate()?;
    if source.arf() != arf(target) {
        return Err(F2Error::NoIsometry(format!(
            "Arf invariants differ (source {}, target {})",
            source.arf(),
            arf(target)
        )));
    }
    let mut cols = [F2Vector::ZERO; RANK];
    if search_frame(0, source, target, &mut cols) {
        Ok(cols)
    } else {
        Err(F2Error::NoIsometry("backtracking exhausted".into()))
    }
}

fn search_frame(
    depth: usize,
    source: &SourceFrame,
    target: &QuadraticFunction,
    cols: &mut [F2Vector; RANK],
) -> bool {
    if depth == RANK {
        return true;
    }
    'cand: for v in F2Vector::nonzero() {
        if target.eval(v) != source.q_values[depth] {
            continue;
        }
        for j in 0..depth {
            if dot(cols[j], v) != source.gram[j][depth] {
                continue 'cand;
            }
        }
        if cols[..depth].contains(&v) {
            continue;
        }
        cols[depth] = v;
        if search_frame(depth + 1, source, target, cols) {
            return true;
        }
    }
    false
}
