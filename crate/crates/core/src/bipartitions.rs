//! The space of even bipartitions of an 8-point set and its identification
//! with the homology model.
//!
//! A bipartition `{A, B}` is kept as its canonical side: the smaller one,
//! and for a 4+4 split the side not containing label 0. Addition is
//! `{A,B} + {C,D} = {A △ C, A △ D}`, the inner product is `|A ∩ C| mod 2`
//! and the parity function is `|A|/2 mod 2`.

use std::fmt;

use thiserror::Error;

use crate::f2core::{
    dot, find_isometry, F2Error, F2Vector, Isometry, QuadraticFunction, SourceFrame, RANK,
    SPACE_SIZE,
};

pub const LABELS: usize = 8;
const FULL: u8 = 0xff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartitionError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("isometry does not preserve the target quadratic function")]
    NotInduced,
    #[error(transparent)]
    F2(#[from] F2Error),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bipartition(u8);

fn canonical_side(side: u8) -> u8 {
    let comp = !side;
    match side.count_ones() {
        0..=3 => side,
        5..=8 => comp,
        _ => {
            if side & 1 == 1 {
                comp
            } else {
                side
            }
        }
    }
}

impl Bipartition {
    pub const EMPTY: Bipartition = Bipartition(0);

    /// Builds the bipartition `{side, complement}`; `side` must be even.
    pub fn from_side(side: u8) -> Result<Self, BipartitionError> {
        if side.count_ones() % 2 == 1 {
            return Err(BipartitionError::BadInput(format!(
                "side {side:#010b} has odd cardinality"
            )));
        }
        Ok(Bipartition(canonical_side(side)))
    }

    pub fn from_labels(labels: &[u8]) -> Result<Self, BipartitionError> {
        let mut side = 0u8;
        for &l in labels {
            if l as usize >= LABELS {
                return Err(BipartitionError::BadInput(format!("label {l} out of range")));
            }
            if side & (1 << l) != 0 {
                return Err(BipartitionError::BadInput(format!("label {l} repeated")));
            }
            side |= 1 << l;
        }
        Self::from_side(side)
    }

    pub fn pair(i: u8, j: u8) -> Self {
        Self::from_labels(&[i, j]).expect("valid pair")
    }

    /// Canonical side as a label mask.
    pub fn side(self) -> u8 {
        self.0
    }

    pub fn other_side(self) -> u8 {
        !self.0 & FULL
    }

    pub fn labels(self) -> Vec<u8> {
        (0..LABELS as u8).filter(|&l| self.0 & (1 << l) != 0).collect()
    }

    /// Size of the canonical side: 0, 2 or 4.
    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_pair(self) -> bool {
        self.size() == 2
    }

    pub fn is_quadruple(self) -> bool {
        self.size() == 4
    }

    /// Linear coordinates: the side avoiding label 7, minus label 0, read
    /// on labels 1..6. The pairs `{0,i}` form the coordinate basis.
    pub fn coords(self) -> u8 {
        let side = if self.0 & 0x80 != 0 { !self.0 } else { self.0 };
        (side >> 1) & 0x3f
    }

    pub fn from_coords(c: u8) -> Self {
        let c = c & 0x3f;
        let mut side = c << 1;
        if c.count_ones() % 2 == 1 {
            side |= 1;
        }
        Bipartition(canonical_side(side))
    }

    pub fn all() -> impl Iterator<Item = Bipartition> {
        (0..SPACE_SIZE as u8).map(Bipartition::from_coords)
    }

    pub fn pairs() -> impl Iterator<Item = Bipartition> {
        (0..LABELS as u8).flat_map(|i| ((i + 1)..LABELS as u8).map(move |j| Bipartition::pair(i, j)))
    }

    pub fn quadruples() -> impl Iterator<Item = Bipartition> {
        Self::all().filter(|b| b.is_quadruple())
    }

    /// Image under a permutation of the labels.
    pub fn permuted(self, perm: &Perm8) -> Bipartition {
        let mut side = 0u8;
        for l in 0..LABELS {
            if self.0 & (1 << l) != 0 {
                side |= 1 << perm.0[l];
            }
        }
        Bipartition(canonical_side(side))
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

pub fn bp_add(x: Bipartition, y: Bipartition) -> Bipartition {
    Bipartition(canonical_side(x.0 ^ y.0))
}

pub fn bp_dot(x: Bipartition, y: Bipartition) -> u8 {
    ((x.0 & y.0).count_ones() & 1) as u8
}

pub fn bp_h(x: Bipartition) -> u8 {
    ((x.size() / 2) & 1) as u8
}

/// A permutation of the eight labels, `i -> self.0[i]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm8(pub [u8; LABELS]);

impl Perm8 {
    pub fn identity() -> Self {
        Perm8(std::array::from_fn(|i| i as u8))
    }

    pub fn new(images: [u8; LABELS]) -> Result<Self, BipartitionError> {
        let mut seen = 0u8;
        for &x in &images {
            if x as usize >= LABELS || seen & (1 << x) != 0 {
                return Err(BipartitionError::BadInput(format!(
                    "{images:?} is not a permutation of 0..8"
                )));
            }
            seen |= 1 << x;
        }
        Ok(Perm8(images))
    }

    pub fn transposition(i: u8, j: u8) -> Self {
        let mut p = Self::identity();
        p.0.swap(i as usize, j as usize);
        p
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Perm8) -> Perm8 {
        Perm8(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn inverse(&self) -> Perm8 {
        let mut inv = [0u8; LABELS];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm8(inv)
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm8::identity()
    }
}

impl fmt::Debug for Perm8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm8{:?}", self.0)
    }
}

/// A linear identification of the bipartition space with the homology
/// model that carries the parity function onto `target`.
#[derive(Clone, PartialEq, Eq)]
pub struct PhiMap {
    target: QuadraticFunction,
    /// Images of the basis pairs `{0,1}..{0,6}`.
    columns: [F2Vector; RANK],
    forward: [F2Vector; SPACE_SIZE],
    backward: [u8; SPACE_SIZE],
}

impl PhiMap {
    fn from_columns(target: QuadraticFunction, columns: [F2Vector; RANK]) -> Self {
        let mut forward = [F2Vector::ZERO; SPACE_SIZE];
        let mut backward = [0u8; SPACE_SIZE];
        for c in 0..SPACE_SIZE as u8 {
            let mut v = F2Vector::ZERO;
            for (i, col) in columns.iter().enumerate() {
                if (c >> i) & 1 == 1 {
                    v += *col;
                }
            }
            forward[c as usize] = v;
            backward[v.bits() as usize] = c;
        }
        PhiMap {
            target,
            columns,
            forward,
            backward,
        }
    }

    pub fn target(&self) -> &QuadraticFunction {
        &self.target
    }

    pub fn columns(&self) -> &[F2Vector; RANK] {
        &self.columns
    }

    pub fn apply(&self, x: Bipartition) -> F2Vector {
        self.forward[x.coords() as usize]
    }

    pub fn inverse(&self, v: F2Vector) -> Bipartition {
        Bipartition::from_coords(self.backward[v.bits() as usize])
    }

    /// Another valid identification, `g ∘ self`, for `g` preserving the target.
    pub fn twisted(&self, g: &Isometry) -> Result<PhiMap, BipartitionError> {
        if !g.preserves(&self.target) {
            return Err(BipartitionError::NotInduced);
        }
        Ok(PhiMap::from_columns(
            self.target,
            std::array::from_fn(|i| g.apply(self.columns[i])),
        ))
    }
}

impl fmt::Debug for PhiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiMap")
            .field("target", &self.target)
            .field("columns", &self.columns)
            .finish()
    }
}

/// Gram and parity data of the basis pairs `{0,1}, .., {0,6}`.
pub fn pair_basis_frame() -> SourceFrame {
    let basis: Vec<Bipartition> = (1..=RANK as u8).map(|i| Bipartition::pair(0, i)).collect();
    SourceFrame {
        gram: std::array::from_fn(|i| std::array::from_fn(|j| bp_dot(basis[i], basis[j]))),
        q_values: std::array::from_fn(|i| bp_h(basis[i])),
    }
}

pub fn build_phi(q: &QuadraticFunction) -> Result<PhiMap, BipartitionError> {
    let columns = find_isometry(&pair_basis_frame(), q)?;
    Ok(PhiMap::from_columns(*q, columns))
}

/// The isometry `Φ ∘ π ∘ Φ⁻¹`.
pub fn perm_to_isometry(perm: &Perm8, phi: &PhiMap) -> Isometry {
    let cols = std::array::from_fn(|k| {
        let lambda = phi.inverse(F2Vector::basis(k));
        phi.apply(lambda.permuted(perm))
    });
    Isometry::from_columns_unchecked(cols)
}

/// Recovers the label permutation inducing `g` from its action on pairs.
pub fn isometry_to_perm(g: &Isometry, phi: &PhiMap) -> Result<Perm8, BipartitionError> {
    if !g.preserves(phi.target()) {
        return Err(BipartitionError::NotInduced);
    }
    let image = |i: u8, j: u8| phi.inverse(g.apply(phi.apply(Bipartition::pair(i, j)))).side();
    let mut images = [0u8; LABELS];
    for i in 0..LABELS as u8 {
        let others: Vec<u8> = (0..LABELS as u8).filter(|&k| k != i).take(2).collect();
        let common = image(i, others[0]) & image(i, others[1]);
        if common.count_ones() != 1 {
            return Err(BipartitionError::NotInduced);
        }
        images[i as usize] = common.trailing_zeros() as u8;
    }
    let perm = Perm8::new(images).map_err(|_| BipartitionError::NotInduced)?;
    if perm_to_isometry(&perm, phi) != *g {
        return Err(BipartitionError::NotInduced);
    }
    Ok(perm)
}

/// Cayley's substitution of pairs attached to a 4+4 bipartition.
pub fn bifid(v: Bipartition, pair: Bipartition) -> Result<Bipartition, BipartitionError> {
    if !v.is_quadruple() {
        return Err(BipartitionError::BadInput(format!("{v} is not a 4+4 split")));
    }
    if !pair.is_pair() {
        return Err(BipartitionError::BadInput(format!("{pair} is not a pair")));
    }
    let (a, b, p) = (v.side(), v.other_side(), pair.side());
    if p & a == p {
        Ok(Bipartition(canonical_side(a & !p)))
    } else if p & b == p {
        Ok(Bipartition(canonical_side(b & !p)))
    } else {
        Ok(pair)
    }
}

/// Picard–Lefschetz action on quadratic functions, labelled by their
/// difference `w` from a fixed refinement: `θ -> θ + (q_θ(v) + 1) v*`.
#[derive(Clone, PartialEq, Eq)]
pub struct ThetaMap {
    vanishing: F2Vector,
    images: [F2Vector; SPACE_SIZE],
}

impl ThetaMap {
    pub fn vanishing(&self) -> F2Vector {
        self.vanishing
    }

    pub fn apply(&self, w: F2Vector) -> F2Vector {
        self.images[w.bits() as usize]
    }

    pub fn is_fixed(&self, w: F2Vector) -> bool {
        self.apply(w) == w
    }
}

impl fmt::Debug for ThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaMap")
            .field("vanishing", &self.vanishing)
            .finish_non_exhaustive()
    }
}

pub fn theta_monodromy(q: &QuadraticFunction, v: F2Vector) -> Result<ThetaMap, BipartitionError> {
    if v.is_zero() {
        return Err(BipartitionError::BadInput("vanishing class must be nonzero".into()));
    }
    let images = std::array::from_fn(|w| {
        let w = F2Vector::new(w as u8).expect("index below 64");
        // q_θ(v) for θ = q + w* is q(v) + w . v
        if q.eval(v) ^ dot(w, v) == 0 {
            w + v
        } else {
            w
        }
    });
    Ok(ThetaMap {
        vanishing: v,
        images,
    })
}

/// The action of `T_v` transported to bipartitions through `phi`.
pub fn bipartition_monodromy(
    phi: &PhiMap,
    v: F2Vector,
) -> Result<[Bipartition; SPACE_SIZE], BipartitionError> {
    let t = theta_monodromy(phi.target(), v)?;
    Ok(std::array::from_fn(|c| {
        let lambda = Bipartition::from_coords(c as u8);
        phi.inverse(t.apply(phi.apply(lambda)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::{arf, q_eval};

    fn bp(labels: &[u8]) -> Bipartition {
        Bipartition::from_labels(labels).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(bp_add(bp(&[0, 1]), bp(&[1, 2])), bp(&[0, 2]));
        for x in Bipartition::all() {
            assert_eq!(bp_add(x, x), Bipartition::EMPTY);
        }
        assert_eq!(bp_add(bp(&[0, 1, 2, 3]), bp(&[0, 1])), bp(&[2, 3]));
    }

    #[test]
    fn dot_examples() {
        assert_eq!(bp_dot(bp(&[0, 1]), bp(&[1, 2])), 1);
        assert_eq!(bp_dot(bp(&[0, 1]), bp(&[2, 3])), 0);
        for x in Bipartition::all() {
            assert_eq!(bp_dot(x, x), 0);
        }
    }

    #[test]
    fn dot_is_independent_of_chosen_sides() {
        for x in Bipartition::all() {
            for y in Bipartition::all() {
                let alt = ((x.side() & y.other_side()).count_ones() & 1) as u8;
                assert_eq!(bp_dot(x, y), alt);
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(bp_h(bp(&[0, 1])), 1);
        assert_eq!(bp_h(bp(&[0, 1, 2, 3])), 0);
        assert_eq!(bp_h(Bipartition::EMPTY), 0);
        assert_eq!(bp_h(bp(&[0, 1, 2, 3, 4, 5])), 1);
    }

    #[test]
    fn canonical_sides() {
        assert_eq!(bp(&[4, 5, 6, 7]), bp(&[0, 1, 2, 3]));
        assert_eq!(bp(&[0, 1, 2, 3]).side(), 0b1111_0000);
        assert_eq!(bp(&[2, 3, 4, 5, 6, 7]), bp(&[0, 1]));
        assert!(Bipartition::from_labels(&[0, 1, 2]).is_err());
        assert_eq!(Bipartition::all().count(), 64);
        assert_eq!(Bipartition::pairs().count(), 28);
        assert_eq!(Bipartition::quadruples().count(), 35);
    }

    #[test]
    fn coordinates_are_linear() {
        for c in 0..64u8 {
            assert_eq!(Bipartition::from_coords(c).coords(), c);
            for d in 0..64u8 {
                assert_eq!(
                    bp_add(Bipartition::from_coords(c), Bipartition::from_coords(d)),
                    Bipartition::from_coords(c ^ d)
                );
            }
        }
    }

    #[test]
    fn pairs_meet_iff_product_is_one() {
        let pairs: Vec<_> = Bipartition::pairs().collect();
        for &x in &pairs {
            for &y in &pairs {
                if x != y {
                    let share = x.side() & y.side() != 0;
                    assert_eq!(bp_dot(x, y) == 1, share);
                }
            }
        }
        let support: Vec<_> = Bipartition::all().filter(|&x| bp_h(x) == 1).collect();
        assert_eq!(support, {
            let mut p = pairs.clone();
            p.sort_by_key(|b| b.coords());
            p
        });
    }

    #[test]
    fn phi_is_an_isomorphism_for_every_even_target() {
        for q in QuadraticFunction::all().filter(|q| arf(q) == 0) {
            let phi = build_phi(&q).unwrap();
            assert_eq!(phi.apply(Bipartition::EMPTY), F2Vector::ZERO);
            let mut seen = std::collections::HashSet::new();
            for x in Bipartition::all() {
                assert!(seen.insert(phi.apply(x)));
                assert_eq!(phi.inverse(phi.apply(x)), x);
                assert_eq!(q_eval(&q, phi.apply(x)), bp_h(x));
                for y in Bipartition::all() {
                    assert_eq!(phi.apply(bp_add(x, y)), phi.apply(x) + phi.apply(y));
                    assert_eq!(dot(phi.apply(x), phi.apply(y)), bp_dot(x, y));
                }
            }
            assert_eq!(dot(phi.apply(bp(&[0, 1])), phi.apply(bp(&[1, 2]))), 1);
        }
    }

    #[test]
    fn phi_fails_for_odd_targets() {
        let odd = QuadraticFunction::from_matrix([[0, 1, 1], [1, 0, 1]]).unwrap();
        assert!(matches!(
            build_phi(&odd),
            Err(BipartitionError::F2(F2Error::NoIsometry(_)))
        ));
    }

    #[test]
    fn bifid_examples() {
        let v = bp(&[0, 1, 2, 3]);
        assert_eq!(bifid(v, bp(&[0, 1])).unwrap(), bp(&[2, 3]));
        assert_eq!(bifid(v, bp(&[0, 4])).unwrap(), bp(&[0, 4]));
        assert_eq!(bifid(v, bp(&[4, 5])).unwrap(), bp(&[6, 7]));
        assert!(bifid(bp(&[0, 1]), bp(&[2, 3])).is_err());
        assert!(bifid(v, v).is_err());
    }

    #[test]
    fn transposition_maps_to_transvection() {
        let q = QuadraticFunction::from_matrix([[0, 0, 0], [1, 0, 1]]).unwrap();
        let phi = build_phi(&q).unwrap();
        assert!(perm_to_isometry(&Perm8::identity(), &phi).is_identity());
        for pair in Bipartition::pairs() {
            let l = pair.labels();
            let g = perm_to_isometry(&Perm8::transposition(l[0], l[1]), &phi);
            assert_eq!(g, Isometry::transvection(phi.apply(pair)));
        }
        let t = Isometry::transvection(phi.apply(bp(&[2, 5])));
        assert_eq!(isometry_to_perm(&t, &phi).unwrap(), Perm8::transposition(2, 5));
        assert_eq!(
            isometry_to_perm(&Isometry::identity(), &phi).unwrap(),
            Perm8::identity()
        );
    }

    #[test]
    fn non_preserving_isometry_is_rejected() {
        let q = QuadraticFunction::from_matrix([[0, 0, 0], [0, 0, 0]]).unwrap();
        let phi = build_phi(&q).unwrap();
        // transvection at a q-zero vector moves q
        let v = F2Vector::nonzero().find(|&v| q.eval(v) == 0).unwrap();
        assert_eq!(
            isometry_to_perm(&Isometry::transvection(v), &phi),
            Err(BipartitionError::NotInduced)
        );
    }

    #[test]
    fn theta_monodromy_fixes_exactly_q_one() {
        let q = QuadraticFunction::from_matrix([[0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(theta_monodromy(&q, F2Vector::ZERO).is_err());
        for v in F2Vector::nonzero() {
            let t = theta_monodromy(&q, v).unwrap();
            for w in F2Vector::all() {
                let theta = q.shifted(w);
                assert_eq!(t.is_fixed(w), theta.eval(v) == 1);
                assert_eq!(arf(&q.shifted(t.apply(w))), arf(&theta));
                assert_eq!(t.apply(t.apply(w)), w);
            }
        }
    }

    #[test]
    fn monodromy_on_bipartitions_is_transposition_or_bifid() {
        let q = QuadraticFunction::from_matrix([[1, 1, 1], [1, 0, 1]]).unwrap();
        let phi = build_phi(&q).unwrap();
        for v in F2Vector::nonzero() {
            let action = bipartition_monodromy(&phi, v).unwrap();
            let class = phi.inverse(v);
            if class.is_pair() {
                let l = class.labels();
                let tau = Perm8::transposition(l[0], l[1]);
                for lambda in Bipartition::all() {
                    assert_eq!(action[lambda.coords() as usize], lambda.permuted(&tau));
                }
            } else {
                assert!(class.is_quadruple());
                let mut fixed = 0;
                for pair in Bipartition::pairs() {
                    let image = action[pair.coords() as usize];
                    assert_eq!(image, bifid(class, pair).unwrap());
                    fixed += usize::from(image == pair);
                }
                assert_eq!(fixed, 16);
            }
        }
    }
}
