//! Theta-diagrams: colorings of the four ovals and six bridges of an
//! M-quartic by the values of a quadratic function (black = 0, white = 1).
//!
//! This module enumerates the S4-orbits of the 64 diagrams, computes the
//! `(alpha, beta)` class invariants, the wall-crossing moves and the class
//! adjacency graph, the collision graphs and the real monodromy groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bipartitions::{isometry_to_perm, BipartitionError, Perm8, PhiMap};
use crate::f2core::{arf, dot, F2Error, F2Vector, Isometry, QuadraticFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("move {0} is not allowed: the named object is white")]
    MoveNotAllowed(Move),
    #[error("diagram {0} is odd; operation requires an even diagram")]
    OddDiagram(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Bipartition(#[from] BipartitionError),
}

fn bad_input(e: F2Error) -> DiagramError {
    match e {
        F2Error::BadInput(m) => DiagramError::BadInput(m),
        other => DiagramError::BadInput(other.to_string()),
    }
}

/// Bridges `b_ij`, `i < j`, in the order used for colorings.
pub const BRIDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Coloring of the ovals and bridges, encoded by the 2x3 matrix of basis values.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaDiagram {
    q: QuadraticFunction,
}

impl ThetaDiagram {
    pub fn new(q: QuadraticFunction) -> Self {
        ThetaDiagram { q }
    }

    pub fn from_matrix(m: [[u8; 3]; 2]) -> Result<Self, DiagramError> {
        QuadraticFunction::from_matrix(m)
            .map(Self::new)
            .map_err(bad_input)
    }

    pub fn parse_bits(s: &str) -> Result<Self, DiagramError> {
        QuadraticFunction::parse_bits(s)
            .map(Self::new)
            .map_err(bad_input)
    }

    pub fn all() -> impl Iterator<Item = ThetaDiagram> {
        QuadraticFunction::all().map(Self::new)
    }

    pub fn quadratic(&self) -> &QuadraticFunction {
        &self.q
    }

    pub fn matrix(&self) -> [[u8; 3]; 2] {
        self.q.matrix()
    }

    pub fn bit_string(&self) -> String {
        self.q.bit_string()
    }

    pub fn oval_colors(&self) -> [u8; 4] {
        std::array::from_fn(|i| self.q.eval(F2Vector::oval(i)))
    }

    pub fn bridge_colors(&self) -> [u8; 6] {
        std::array::from_fn(|k| {
            let (i, j) = BRIDGES[k];
            self.q.eval(F2Vector::bridge(i, j))
        })
    }

    pub fn bridge_color(&self, i: usize, j: usize) -> u8 {
        self.q.eval(F2Vector::bridge(i, j))
    }

    pub fn parity(&self) -> Parity {
        if arf(&self.q) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn require_even(&self) -> Result<(), DiagramError> {
        match self.parity() {
            Parity::Even => Ok(()),
            Parity::Odd => Err(DiagramError::OddDiagram(self.bit_string())),
        }
    }
}

impl fmt::Debug for ThetaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThetaDiagram({})", self.bit_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassLabel {
    pub alpha: u8,
    pub beta: u8,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

impl ClassLabel {
    pub const fn even(alpha: u8, beta: u8) -> Self {
        ClassLabel {
            alpha,
            beta,
            parity: Parity::Even,
            sign: None,
        }
    }

    /// Short name such as `O24`.
    pub fn name(&self) -> String {
        let base = format!("O{}{}", self.alpha, self.beta);
        let sign = match self.sign {
            Some(s) if s > 0 => "+",
            Some(_) => "-",
            None => "",
        };
        match self.parity {
            Parity::Even => format!("{base}{sign}"),
            Parity::Odd => format!("{base}{sign}(odd)"),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The eight even classes in table order: rows beta = 4, 3, 0; columns alpha = 0, 2, 4.
pub const EVEN_CLASSES: [ClassLabel; 8] = [
    ClassLabel::even(0, 4),
    ClassLabel::even(2, 4),
    ClassLabel::even(4, 4),
    ClassLabel::even(0, 3),
    ClassLabel::even(2, 3),
    ClassLabel::even(0, 0),
    ClassLabel::even(2, 0),
    ClassLabel::even(4, 0),
];

pub fn class_label(d: &ThetaDiagram) -> ClassLabel {
    let alpha = d.oval_colors().iter().sum();
    let beta = d.bridge_colors().iter().sum();
    ClassLabel {
        alpha,
        beta,
        parity: d.parity(),
        sign: None,
    }
}

/// A permutation of the four ovals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub fn identity() -> Self {
        Perm4([0, 1, 2, 3])
    }

    pub fn new(images: [u8; 4]) -> Result<Self, DiagramError> {
        let mut sorted = images;
        sorted.sort_unstable();
        if sorted != [0, 1, 2, 3] {
            return Err(DiagramError::BadInput(format!("{images:?} is not a permutation")));
        }
        Ok(Perm4(images))
    }

    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        permutations(4, &mut |p| out.push(Perm4([p[0], p[1], p[2], p[3]])));
        out
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while p != Perm4::identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4{:?}", self.0)
    }
}

/// Lexicographic enumeration of permutations of `0..n`.
pub(crate) fn permutations(n: usize, visit: &mut dyn FnMut(&[u8])) {
    fn rec(prefix: &mut Vec<u8>, used: u32, n: usize, visit: &mut dyn FnMut(&[u8])) {
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        for x in 0..n as u8 {
            if used & (1 << x) == 0 {
                prefix.push(x);
                rec(prefix, used | (1 << x), n, visit);
                prefix.pop();
            }
        }
    }
    rec(&mut Vec::with_capacity(n), 0, n, visit);
}

/// The homology automorphism relabelling ovals by `sigma`:
/// `a_i -> a_σ(i)`, `b_ij -> b_σ(i)σ(j)`.
pub fn s4_isometry(sigma: &Perm4) -> Isometry {
    let s = |i| sigma.apply(i);
    let bridge = |i: usize, j: usize| {
        if i == j {
            F2Vector::ZERO
        } else {
            F2Vector::bridge(i, j)
        }
    };
    let cols = [
        F2Vector::oval(s(1)),
        F2Vector::oval(s(2)),
        F2Vector::oval(s(3)),
        bridge(s(0), s(1)),
        bridge(s(0), s(2)),
        bridge(s(0), s(3)),
    ];
    Isometry::from_columns(cols).expect("oval relabelling preserves the form")
}

/// Relabels the diagram: the new color of an object is the old color of its image.
pub fn s4_apply(sigma: &Perm4, d: &ThetaDiagram) -> ThetaDiagram {
    ThetaDiagram::new(d.q.pullback(&s4_isometry(sigma)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: String,
    pub size: usize,
    pub label: ClassLabel,
    pub members: Vec<String>,
}

/// S4-orbits of all 64 diagrams, even orbits first, each group ordered by
/// representative (the lexicographically smallest row-major bit string).
pub fn enumerate_orbits() -> Vec<Orbit> {
    let perms = Perm4::all();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut all: Vec<ThetaDiagram> = ThetaDiagram::all().collect();
    all.sort_by_key(|d| d.bit_string());
    for d in all {
        if seen.contains(&d.bit_string()) {
            continue;
        }
        let members: BTreeSet<String> = perms.iter().map(|s| s4_apply(s, &d).bit_string()).collect();
        seen.extend(members.iter().cloned());
        let members: Vec<String> = members.into_iter().collect();
        orbits.push(Orbit {
            representative: members[0].clone(),
            size: members.len(),
            label: class_label(&d),
            members,
        });
    }
    orbits.sort_by(|a, b| {
        (a.label.parity, &a.representative).cmp(&(b.label.parity, &b.representative))
    });
    orbits
}

/// The `(alpha, beta)` pairs of `{0,2,4} x {0,3,4}` not carried by any even orbit.
pub fn even_exceptions(orbits: &[Orbit]) -> Vec<(u8, u8)> {
    let present: BTreeSet<(u8, u8)> = orbits
        .iter()
        .filter(|o| o.label.parity == Parity::Even)
        .map(|o| (o.label.alpha, o.label.beta))
        .collect();
    let mut missing = Vec::new();
    for a in [0u8, 2, 4] {
        for b in [0u8, 3, 4] {
            if !present.contains(&(a, b)) {
                missing.push((a, b));
            }
        }
    }
    missing
}

/// A wall-crossing modification of an even diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Move {
    /// Cross the wall of the bridge `b_ij`; flips the colors of ovals `i`, `j`.
    BlackEdge(usize, usize),
    /// Cross the wall of the oval `a_i`; flips the three bridges at `i`.
    BlackVertex(usize),
}

impl Move {
    pub fn all() -> Vec<Move> {
        BRIDGES
            .iter()
            .map(|&(i, j)| Move::BlackEdge(i, j))
            .chain((0..4).map(Move::BlackVertex))
            .collect()
    }

    pub fn vanishing_class(&self) -> F2Vector {
        match *self {
            Move::BlackEdge(i, j) => F2Vector::bridge(i, j),
            Move::BlackVertex(i) => F2Vector::oval(i),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::BlackEdge(i, j) => write!(f, "edge b{i}{j}"),
            Move::BlackVertex(i) => write!(f, "vertex a{i}"),
        }
    }
}

pub fn apply_move(d: &ThetaDiagram, mv: Move) -> Result<ThetaDiagram, DiagramError> {
    d.require_even()?;
    if let Move::BlackEdge(i, j) = mv {
        if i >= 4 || j >= 4 || i == j {
            return Err(DiagramError::BadInput(format!("no bridge ({i},{j})")));
        }
    }
    if let Move::BlackVertex(i) = mv {
        if i >= 4 {
            return Err(DiagramError::BadInput(format!("no oval {i}")));
        }
    }
    let v = mv.vanishing_class();
    if d.q.eval(v) == 1 {
        return Err(DiagramError::MoveNotAllowed(mv));
    }
    Ok(ThetaDiagram::new(d.q.shifted(v)))
}

pub fn admissible_moves(d: &ThetaDiagram) -> Vec<Move> {
    if d.parity() == Parity::Odd {
        return Vec::new();
    }
    Move::all()
        .into_iter()
        .filter(|m| d.q.eval(m.vanishing_class()) == 0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyGraph {
    pub vertices: Vec<ClassLabel>,
    /// Unordered pairs of distinct classes, `(alpha, beta)` each.
    pub edges: Vec<((u8, u8), (u8, u8))>,
    pub self_loops: Vec<(u8, u8)>,
}

impl AdjacencyGraph {
    pub fn has_edge(&self, a: (u8, u8), b: (u8, u8)) -> bool {
        if a == b {
            return self.self_loops.contains(&a);
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&key)
    }
}

/// Applies every admissible move to every even diagram and records the
/// resulting pairs of classes.
pub fn adjacency_graph() -> AdjacencyGraph {
    let mut edges = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for d in ThetaDiagram::all().filter(|d| d.parity() == Parity::Even) {
        let from = class_label(&d);
        for mv in admissible_moves(&d) {
            let to = class_label(&apply_move(&d, mv).expect("admissible"));
            let a = (from.alpha, from.beta);
            let b = (to.alpha, to.beta);
            if a == b {
                loops.insert(a);
            } else {
                edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    AdjacencyGraph {
        vertices: EVEN_CLASSES.to_vec(),
        edges: edges.into_iter().collect(),
        self_loops: loops.into_iter().collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeTag {
    /// Collapse of an oval.
    #[serde(rename = "alpha")]
    Oval,
    /// Collapse of a bridge.
    #[serde(rename = "beta")]
    Bridge,
}

impl EdgeTag {
    pub fn symbol(&self) -> &'static str {
        match self {
            EdgeTag::Oval => "alpha",
            EdgeTag::Bridge => "beta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GammaEdge {
    pub u: u8,
    pub v: u8,
    pub tag: EdgeTag,
}

impl GammaEdge {
    pub fn new(a: u8, b: u8, tag: EdgeTag) -> Self {
        GammaEdge {
            u: a.min(b),
            v: a.max(b),
            tag,
        }
    }
}

/// A graph on the points of the octad with edges tagged by collision type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaGraph {
    pub vertex_count: usize,
    pub edges: Vec<GammaEdge>,
}

impl GammaGraph {
    pub fn new(vertex_count: usize, mut edges: Vec<GammaEdge>) -> Self {
        edges.sort();
        GammaGraph {
            vertex_count,
            edges,
        }
    }

    pub fn from_lists(vertex_count: usize, alpha: &[(u8, u8)], beta: &[(u8, u8)]) -> Self {
        let edges = alpha
            .iter()
            .map(|&(a, b)| GammaEdge::new(a, b, EdgeTag::Oval))
            .chain(beta.iter().map(|&(a, b)| GammaEdge::new(a, b, EdgeTag::Bridge)))
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn count(&self, tag: EdgeTag) -> usize {
        self.edges.iter().filter(|e| e.tag == tag).count()
    }

    pub fn has_multi_edges(&self) -> bool {
        let pairs: BTreeSet<(u8, u8)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        pairs.len() != self.edges.len()
    }

    /// Edges with the same tag never share a vertex.
    pub fn tags_are_matchings(&self) -> bool {
        [EdgeTag::Oval, EdgeTag::Bridge].iter().all(|&t| {
            let mut used = 0u32;
            self.edges.iter().filter(|e| e.tag == t).all(|e| {
                let m = (1u32 << e.u) | (1u32 << e.v);
                let ok = used & m == 0;
                used |= m;
                ok
            })
        })
    }

    fn signature(&self, x: u8) -> (usize, usize) {
        let deg = |t| {
            self.edges
                .iter()
                .filter(|e| e.tag == t && (e.u == x || e.v == x))
                .count()
        };
        (deg(EdgeTag::Oval), deg(EdgeTag::Bridge))
    }

    fn relabelled(&self, new_label: &[u8]) -> Vec<GammaEdge> {
        let mut edges: Vec<GammaEdge> = self
            .edges
            .iter()
            .map(|e| GammaEdge::new(new_label[e.u as usize], new_label[e.v as usize], e.tag))
            .collect();
        edges.sort();
        edges
    }

    /// Canonical edge list: vertices are renumbered in order of their
    /// `(alpha-degree, beta-degree)` signature, ties broken by trying every
    /// order and keeping the smallest edge list.
    pub fn canonical_form(&self) -> Vec<GammaEdge> {
        let n = self.vertex_count;
        let sigs: Vec<(usize, usize)> = (0..n as u8).map(|x| self.signature(x)).collect();
        let mut order: Vec<(usize, usize)> = sigs.clone();
        order.sort();
        let mut best: Option<Vec<GammaEdge>> = None;
        let mut new_label = vec![u8::MAX; n];
        fn rec(
            pos: usize,
            g: &GammaGraph,
            sigs: &[(usize, usize)],
            order: &[(usize, usize)],
            new_label: &mut Vec<u8>,
            best: &mut Option<Vec<GammaEdge>>,
        ) {
            if pos == sigs.len() {
                let cand = g.relabelled(new_label);
                if best.as_ref().map_or(true, |b| cand < *b) {
                    *best = Some(cand);
                }
                return;
            }
            for x in 0..sigs.len() {
                if new_label[x] == u8::MAX && sigs[x] == order[pos] {
                    new_label[x] = pos as u8;
                    rec(pos + 1, g, sigs, order, new_label, best);
                    new_label[x] = u8::MAX;
                }
            }
        }
        rec(0, self, &sigs, &order, &mut new_label, &mut best);
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &GammaGraph) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }

    /// Whether `perm` maps the edge set onto itself with tags.
    pub fn is_automorphism(&self, perm: &Perm8) -> bool {
        self.relabelled(&perm.0) == self.edges
    }

    pub fn describe(&self) -> String {
        if self.edges.is_empty() {
            return "no edges".into();
        }
        self.edges
            .iter()
            .map(|e| format!("{}-{}:{}", e.u, e.v, e.tag.symbol()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// White ovals and bridges of `d` as vanishing classes with their tags.
pub fn white_objects(d: &ThetaDiagram) -> Vec<(F2Vector, EdgeTag)> {
    let ovals = (0..4)
        .map(|i| (F2Vector::oval(i), EdgeTag::Oval))
        .filter(|(v, _)| d.q.eval(*v) == 1);
    let bridges = BRIDGES
        .iter()
        .map(|&(i, j)| (F2Vector::bridge(i, j), EdgeTag::Bridge))
        .filter(|(v, _)| d.q.eval(*v) == 1);
    ovals.chain(bridges).collect()
}

/// Collision graph: each white oval or bridge becomes the pair-class edge
/// `Φ⁻¹(v)`.
pub fn gamma_graph(d: &ThetaDiagram, phi: &PhiMap) -> Result<GammaGraph, DiagramError> {
    d.require_even()?;
    if phi.target() != &d.q {
        return Err(DiagramError::BadInput(
            "identification targets a different quadratic function".into(),
        ));
    }
    let edges = white_objects(d)
        .into_iter()
        .map(|(v, tag)| {
            let pair = phi.inverse(v);
            debug_assert!(pair.is_pair());
            let l = pair.labels();
            GammaEdge::new(l[0], l[1], tag)
        })
        .collect();
    Ok(GammaGraph::new(8, edges))
}

/// Builds a graph on `vertex_count` vertices with one edge per object such
/// that two edges share a vertex exactly when `meets` says so. Vertices are
/// introduced in order of first use, so the answer is deterministic.
pub fn realize_incidence(
    tags: &[EdgeTag],
    meets: &dyn Fn(usize, usize) -> bool,
    vertex_count: usize,
) -> Option<GammaGraph> {
    fn rec(
        k: usize,
        tags: &[EdgeTag],
        meets: &dyn Fn(usize, usize) -> bool,
        n: usize,
        used_vertices: usize,
        chosen: &mut Vec<(u8, u8)>,
    ) -> bool {
        if k == tags.len() {
            return true;
        }
        let limit = (used_vertices + 2).min(n);
        for u in 0..limit {
            for v in (u + 1)..limit {
                // fresh vertices are introduced in increasing order
                let fresh_ok = if u >= used_vertices {
                    u == used_vertices && v == u + 1
                } else {
                    v <= used_vertices
                };
                if !fresh_ok {
                    continue;
                }
                let ok = chosen.iter().enumerate().all(|(j, &(a, b))| {
                    let share = a == u as u8 || a == v as u8 || b == u as u8 || b == v as u8;
                    let same = a == u as u8 && b == v as u8;
                    !same && share == meets(j, k)
                });
                if !ok {
                    continue;
                }
                chosen.push((u as u8, v as u8));
                let now_used = used_vertices.max(v + 1);
                if rec(k + 1, tags, meets, n, now_used, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !rec(0, tags, meets, vertex_count, 0, &mut chosen) {
        return None;
    }
    Some(GammaGraph::new(
        vertex_count,
        chosen
            .iter()
            .zip(tags)
            .map(|(&(u, v), &t)| GammaEdge::new(u, v, t))
            .collect(),
    ))
}

/// Collision graph reconstructed from the intersection pattern of the white
/// objects alone, without any identification map.
pub fn gamma_graph_from_incidence(d: &ThetaDiagram) -> Option<GammaGraph> {
    let objects = white_objects(d);
    let tags: Vec<EdgeTag> = objects.iter().map(|o| o.1).collect();
    realize_incidence(&tags, &|i, j| dot(objects[i].0, objects[j].0) == 1, 8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupName {
    S4,
    S3,
    D4,
    Z2xZ2,
    Z2,
    Trivial,
    Other,
}

impl GroupName {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupName::S4 => "S4",
            GroupName::S3 => "S3",
            GroupName::D4 => "D4",
            GroupName::Z2xZ2 => "Z2xZ2",
            GroupName::Z2 => "Z2",
            GroupName::Trivial => "trivial",
            GroupName::Other => "other",
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Names a subgroup of S4 from its order and element-order profile.
pub fn name_group(elements: &[Perm4]) -> GroupName {
    let order4 = elements.iter().filter(|p| p.order() == 4).count();
    let involutions = elements.iter().filter(|p| p.order() == 2).count();
    match elements.len() {
        24 => GroupName::S4,
        6 => GroupName::S3,
        8 if order4 == 2 => GroupName::D4,
        4 if involutions == 3 => GroupName::Z2xZ2,
        2 => GroupName::Z2,
        1 => GroupName::Trivial,
        _ => GroupName::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyGroup {
    pub elements: Vec<Perm4>,
    pub lifted: Vec<Perm8>,
    pub name: GroupName,
}

impl MonodromyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Symmetries of the diagram that keep every oval and bridge color.
pub fn diagram_symmetries(d: &ThetaDiagram) -> Vec<Perm4> {
    Perm4::all()
        .into_iter()
        .filter(|s| {
            let e = s4_apply(s, d);
            e.oval_colors() == d.oval_colors() && e.bridge_colors() == d.bridge_colors()
        })
        .collect()
}

pub fn monodromy_group(d: &ThetaDiagram, phi: &PhiMap) -> Result<MonodromyGroup, DiagramError> {
    d.require_even()?;
    let elements = diagram_symmetries(d);
    let lifted = elements
        .iter()
        .map(|s| isometry_to_perm(&s4_isometry(s), phi))
        .collect::<Result<Vec<_>, _>>()?;
    let name = name_group(&elements);
    Ok(MonodromyGroup {
        elements,
        lifted,
        name,
    })
}

pub fn orbit_count(group: &[Perm8]) -> usize {
    let mut parent: Vec<usize> = (0..8).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in group {
        for x in 0..8 {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x as u8) as usize));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..8).filter(|&x| find(&mut parent, x) == x).count()
}

pub fn vertex_orbits(d: &ThetaDiagram, phi: &PhiMap) -> Result<usize, DiagramError> {
    Ok(orbit_count(&monodromy_group(d, phi)?.lifted))
}

/// Canonical diagram of an even class: the representative of its orbit.
pub fn class_representative(label: (u8, u8)) -> Option<ThetaDiagram> {
    enumerate_orbits()
        .into_iter()
        .find(|o| o.label.parity == Parity::Even && (o.label.alpha, o.label.beta) == label)
        .map(|o| ThetaDiagram::parse_bits(&o.representative).expect("valid bits"))
}

/// Collision graphs transcribed from the published table, keyed by `(alpha, beta)`.
/// Vertices are numbered row by row around the drawn octagon.
pub fn published_gamma_graphs() -> BTreeMap<(u8, u8), GammaGraph> {
    let beta4 = [(2, 0), (3, 1), (4, 6), (5, 7)];
    let alpha4 = [(0, 1), (2, 4), (3, 5), (6, 7)];
    let mut m = BTreeMap::new();
    m.insert((0, 4), GammaGraph::from_lists(8, &[], &beta4));
    m.insert((2, 4), GammaGraph::from_lists(8, &[(0, 1), (6, 7)], &beta4));
    m.insert((4, 4), GammaGraph::from_lists(8, &alpha4, &beta4));
    m.insert((0, 3), GammaGraph::from_lists(8, &[], &[(0, 2), (1, 3), (4, 6)]));
    m.insert(
        (2, 3),
        GammaGraph::from_lists(8, &[(3, 5), (6, 7)], &[(1, 3), (2, 0), (4, 6)]),
    );
    m.insert((0, 0), GammaGraph::from_lists(8, &[], &[]));
    m.insert((2, 0), GammaGraph::from_lists(8, &[(0, 1), (6, 7)], &[]));
    m.insert((4, 0), GammaGraph::from_lists(8, &alpha4, &[]));
    m
}

/// Published monodromy group names and orbit counts per even class.
pub fn published_monodromy() -> BTreeMap<(u8, u8), (GroupName, usize)> {
    use GroupName::*;
    [
        ((0, 4), (D4, 1)),
        ((2, 4), (Z2xZ2, 2)),
        ((4, 4), (D4, 1)),
        ((0, 3), (S3, 2)),
        ((2, 3), (Z2, 4)),
        ((0, 0), (S4, 1)),
        ((2, 0), (Z2xZ2, 2)),
        ((4, 0), (S4, 1)),
    ]
    .into_iter()
    .collect()
}

/// Theta-diagram of an (M-1)-quartic: three ovals, and two bridges
/// `b_ij^+`, `b_ij^-` for each pair of ovals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M1Diagram {
    pub name: String,
    pub ovals: [u8; 3],
    /// Colors of `(b_01^+, b_02^+, b_12^+)` and `(b_01^-, b_02^-, b_12^-)`.
    pub bridges_plus: [u8; 3],
    pub bridges_minus: [u8; 3],
}

const M1_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl M1Diagram {
    fn pair_index(i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        M1_PAIRS.iter().position(|&p| p == key).expect("pair of distinct ovals")
    }

    pub fn opposite_bridge_colors(&self) -> bool {
        (0..3).all(|k| self.bridges_plus[k] ^ self.bridges_minus[k] == 1)
    }

    /// Oval permutations keeping oval colors and, with each bridge carried
    /// to the bridge of the same kind between the image ovals, bridge colors.
    pub fn symmetries(&self) -> Vec<[u8; 3]> {
        let mut out = Vec::new();
        permutations(3, &mut |p| {
            let keeps_ovals = (0..3).all(|i| self.ovals[p[i] as usize] == self.ovals[i]);
            let keeps_bridges = M1_PAIRS.iter().enumerate().all(|(k, &(i, j))| {
                let img = Self::pair_index(p[i] as usize, p[j] as usize);
                self.bridges_plus[img] == self.bridges_plus[k]
                    && self.bridges_minus[img] == self.bridges_minus[k]
            });
            if keeps_ovals && keeps_bridges {
                out.push([p[0], p[1], p[2]]);
            }
        });
        out
    }

    /// Collision graph on six vertices realizing the incidence of the white
    /// ovals and bridges (an oval meets exactly the bridges ending on it).
    pub fn gamma_graph(&self) -> Option<GammaGraph> {
        enum Obj {
            Oval(usize),
            Bridge(usize, usize),
        }
        let mut objs = Vec::new();
        for i in 0..3 {
            if self.ovals[i] == 1 {
                objs.push(Obj::Oval(i));
            }
        }
        for (k, &(i, j)) in M1_PAIRS.iter().enumerate() {
            if self.bridges_plus[k] == 1 {
                objs.push(Obj::Bridge(i, j));
            }
            if self.bridges_minus[k] == 1 {
                objs.push(Obj::Bridge(i, j));
            }
        }
        let tags: Vec<EdgeTag> = objs
            .iter()
            .map(|o| match o {
                Obj::Oval(_) => EdgeTag::Oval,
                Obj::Bridge(..) => EdgeTag::Bridge,
            })
            .collect();
        let meets = |a: usize, b: usize| match (&objs[a], &objs[b]) {
            (Obj::Oval(i), Obj::Bridge(j, k)) | (Obj::Bridge(j, k), Obj::Oval(i)) => {
                i == j || i == k
            }
            _ => false,
        };
        realize_incidence(&tags, &meets, 6)
    }
}

/// The two even (M-1) theta-diagrams: finite bridges white, bridges through
/// infinity black; one white oval in the first, three in the second.
pub fn m1_diagrams() -> [M1Diagram; 2] {
    [
        M1Diagram {
            name: "one white oval".into(),
            ovals: [1, 0, 0],
            bridges_plus: [1, 1, 1],
            bridges_minus: [0, 0, 0],
        },
        M1Diagram {
            name: "three white ovals".into(),
            ovals: [1, 1, 1],
            bridges_plus: [1, 1, 1],
            bridges_minus: [0, 0, 0],
        },
    ]
}

/// Published collision graphs of the two (M-1) diagrams, hexagon numbering.
pub fn published_m1_gamma_graphs() -> [GammaGraph; 2] {
    [
        GammaGraph::from_lists(6, &[(0, 1)], &[(2, 0), (3, 1), (4, 5)]),
        GammaGraph::from_lists(6, &[(0, 1), (2, 4), (3, 5)], &[(2, 0), (3, 1), (4, 5)]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M1Check {
    pub name: String,
    pub opposite_bridge_colors: bool,
    pub symmetry_order: usize,
    pub symmetry_group: GroupName,
    pub gamma: Option<GammaGraph>,
    pub gamma_matches_published: bool,
}

pub fn m1_diagram_checks() -> Vec<M1Check> {
    m1_diagrams()
        .iter()
        .zip(published_m1_gamma_graphs())
        .map(|(d, published)| {
            let sym = d.symmetries();
            let as_s4: Vec<Perm4> = sym
                .iter()
                .map(|p| Perm4([p[0], p[1], p[2], 3]))
                .collect();
            let gamma = d.gamma_graph();
            let matches = gamma.as_ref().is_some_and(|g| g.is_isomorphic(&published));
            M1Check {
                name: d.name.clone(),
                opposite_bridge_colors: d.opposite_bridge_colors(),
                symmetry_order: sym.len(),
                symmetry_group: name_group(&as_s4),
                gamma,
                gamma_matches_published: matches,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartitions::build_phi;

    fn diag(m: [[u8; 3]; 2]) -> ThetaDiagram {
        ThetaDiagram::from_matrix(m).unwrap()
    }

    #[test]
    fn class_label_examples() {
        let l = class_label(&diag([[0, 0, 0], [1, 0, 1]]));
        assert_eq!((l.alpha, l.beta, l.parity), (0, 4, Parity::Even));
        let l = class_label(&diag([[0, 0, 0], [0, 0, 0]]));
        assert_eq!((l.alpha, l.beta, l.parity), (0, 0, Parity::Even));
        let l = class_label(&diag([[1, 1, 1], [0, 0, 1]]));
        assert_eq!((l.alpha, l.beta, l.parity), (4, 3, Parity::Odd));
    }

    #[test]
    fn coloring_is_linear_on_halves() {
        for d in ThetaDiagram::all() {
            let o = d.oval_colors();
            assert_eq!(o[0], o[1] ^ o[2] ^ o[3]);
            for &(i, j) in &BRIDGES[3..] {
                assert_eq!(d.bridge_color(i, j), d.bridge_color(0, i) ^ d.bridge_color(0, j));
            }
        }
    }

    /// Relabels the full coloring directly, without the homology model.
    fn relabel_coloring(sigma: &Perm4, d: &ThetaDiagram) -> ([u8; 4], [u8; 6]) {
        let o = d.oval_colors();
        let ovals = std::array::from_fn(|i| o[sigma.apply(i)]);
        let bridges = std::array::from_fn(|k| {
            let (i, j) = BRIDGES[k];
            d.bridge_color(sigma.apply(i), sigma.apply(j))
        });
        (ovals, bridges)
    }

    #[test]
    fn s4_apply_matches_coloring_oracle() {
        let swap01 = Perm4::new([1, 0, 2, 3]).unwrap();
        assert_eq!(
            s4_apply(&swap01, &diag([[0, 0, 0], [1, 0, 1]])).matrix(),
            [[0, 0, 0], [1, 1, 0]]
        );
        for sigma in Perm4::all() {
            for d in ThetaDiagram::all() {
                let e = s4_apply(&sigma, &d);
                assert_eq!((e.oval_colors(), e.bridge_colors()), relabel_coloring(&sigma, &d));
                let (a, b) = (class_label(&d), class_label(&e));
                assert_eq!(a, b);
            }
            assert_eq!(s4_apply(&Perm4::identity(), &diag([[0, 1, 0], [0, 0, 1]])).matrix(), [[0, 1, 0], [0, 0, 1]]);
        }
    }

    #[test]
    fn orbit_sizes() {
        let orbits = enumerate_orbits();
        assert_eq!(orbits.len(), 11);
        let sizes: BTreeMap<(u8, u8), usize> = orbits
            .iter()
            .filter(|o| o.label.parity == Parity::Even)
            .map(|o| ((o.label.alpha, o.label.beta), o.size))
            .collect();
        let expected: BTreeMap<(u8, u8), usize> = [
            ((0, 0), 1),
            ((4, 0), 1),
            ((2, 0), 6),
            ((0, 3), 4),
            ((2, 3), 12),
            ((0, 4), 3),
            ((2, 4), 6),
            ((4, 4), 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(sizes, expected);
        assert_eq!(even_exceptions(&orbits), vec![(4, 3)]);
    }

    #[test]
    fn move_examples() {
        let d00 = diag([[0, 0, 0], [0, 0, 0]]);
        let l = class_label(&apply_move(&d00, Move::BlackVertex(3)).unwrap());
        assert_eq!((l.alpha, l.beta), (0, 3));
        let l = class_label(&apply_move(&d00, Move::BlackEdge(0, 1)).unwrap());
        assert_eq!((l.alpha, l.beta), (2, 0));

        let d23 = diag([[0, 1, 0], [0, 0, 1]]);
        // a black bridge joining a white and a black oval keeps the class
        let (i, j) = BRIDGES
            .iter()
            .copied()
            .find(|&(i, j)| {
                d23.bridge_color(i, j) == 0 && d23.oval_colors()[i] != d23.oval_colors()[j]
            })
            .unwrap();
        let l = class_label(&apply_move(&d23, Move::BlackEdge(i, j)).unwrap());
        assert_eq!((l.alpha, l.beta), (2, 3));

        let d04 = diag([[0, 0, 0], [1, 0, 1]]);
        assert_eq!(
            apply_move(&d04, Move::BlackEdge(0, 1)),
            Err(DiagramError::MoveNotAllowed(Move::BlackEdge(0, 1)))
        );
        let odd = diag([[0, 1, 1], [1, 0, 1]]);
        assert!(matches!(apply_move(&odd, Move::BlackVertex(0)), Err(DiagramError::OddDiagram(_))));
    }

    #[test]
    fn moves_are_parity_preserving_involutions() {
        for d in ThetaDiagram::all().filter(|d| d.parity() == Parity::Even) {
            for mv in admissible_moves(&d) {
                let e = apply_move(&d, mv).unwrap();
                assert_eq!(e.parity(), Parity::Even);
                assert_eq!(apply_move(&e, mv).unwrap(), d);
            }
        }
    }

    #[test]
    fn edge_and_vertex_moves_touch_only_their_objects() {
        let d = diag([[1, 0, 0], [0, 1, 0]]);
        for mv in admissible_moves(&d) {
            let e = apply_move(&d, mv).unwrap();
            let dov: Vec<u8> = (0..4).map(|i| d.oval_colors()[i] ^ e.oval_colors()[i]).collect();
            let dbr: Vec<u8> = (0..6).map(|k| d.bridge_colors()[k] ^ e.bridge_colors()[k]).collect();
            match mv {
                Move::BlackEdge(i, j) => {
                    assert!(dbr.iter().all(|&x| x == 0));
                    for k in 0..4 {
                        assert_eq!(dov[k], u8::from(k == i || k == j));
                    }
                }
                Move::BlackVertex(i) => {
                    assert!(dov.iter().all(|&x| x == 0));
                    for (k, &(a, b)) in BRIDGES.iter().enumerate() {
                        assert_eq!(dbr[k], u8::from(a == i || b == i));
                    }
                }
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let g = adjacency_graph();
        let neighbours: Vec<(u8, u8)> = EVEN_CLASSES
            .iter()
            .map(|c| (c.alpha, c.beta))
            .filter(|&c| c != (0, 0) && g.has_edge((0, 0), c))
            .collect();
        assert_eq!(neighbours, vec![(0, 3), (2, 0)]);
        assert_eq!(g.self_loops, vec![(2, 0), (2, 3)]);
        assert!(!g.has_edge((4, 0), (4, 4)));
    }

    #[test]
    fn gamma_examples() {
        for (label, expected) in published_gamma_graphs() {
            let d = class_representative(label).unwrap();
            let phi = build_phi(d.quadratic()).unwrap();
            let g = gamma_graph(&d, &phi).unwrap();
            assert!(!g.has_multi_edges());
            assert!(g.tags_are_matchings());
            assert_eq!(g.edges.len(), (label.0 + label.1) as usize);
            assert!(g.is_isomorphic(&expected), "class {label:?}: {}", g.describe());
        }
    }

    #[test]
    fn gamma_graph_agrees_with_incidence_realization() {
        for c in EVEN_CLASSES {
            let d = class_representative((c.alpha, c.beta)).unwrap();
            let phi = build_phi(d.quadratic()).unwrap();
            let direct = gamma_graph(&d, &phi).unwrap();
            let realized = gamma_graph_from_incidence(&d).unwrap();
            assert!(direct.is_isomorphic(&realized), "{c}");
        }
    }

    #[test]
    fn isomorphism_respects_tags() {
        let a = GammaGraph::from_lists(8, &[(0, 1)], &[(1, 2)]);
        let b = GammaGraph::from_lists(8, &[(5, 6)], &[(4, 5)]);
        let c = GammaGraph::from_lists(8, &[(1, 2)], &[(0, 1)]);
        let d = GammaGraph::from_lists(8, &[(0, 1)], &[(2, 3)]);
        assert!(a.is_isomorphic(&b));
        assert!(a.is_isomorphic(&c));
        assert!(!a.is_isomorphic(&d));
        let e = GammaGraph::from_lists(8, &[], &[(0, 1), (1, 2)]);
        assert!(!a.is_isomorphic(&e));
    }

    #[test]
    fn monodromy_examples() {
        let cases = [
            ([[0, 0, 0], [0, 0, 0]], GroupName::S4, 24),
            ([[0, 0, 0], [1, 0, 1]], GroupName::D4, 8),
            ([[0, 1, 0], [0, 0, 1]], GroupName::Z2, 2),
        ];
        for (m, name, order) in cases {
            let d = diag(m);
            let phi = build_phi(d.quadratic()).unwrap();
            let g = monodromy_group(&d, &phi).unwrap();
            assert_eq!((g.name, g.order()), (name, order));
        }
        let d04 = diag([[0, 0, 0], [1, 0, 1]]);
        assert_eq!(vertex_orbits(&d04, &build_phi(d04.quadratic()).unwrap()).unwrap(), 1);
        let d23 = diag([[0, 1, 0], [0, 0, 1]]);
        assert_eq!(vertex_orbits(&d23, &build_phi(d23.quadratic()).unwrap()).unwrap(), 4);
    }

    #[test]
    fn lifted_groups_preserve_decorated_graphs() {
        for c in EVEN_CLASSES {
            let d = class_representative((c.alpha, c.beta)).unwrap();
            let phi = build_phi(d.quadratic()).unwrap();
            let g = gamma_graph(&d, &phi).unwrap();
            let m = monodromy_group(&d, &phi).unwrap();
            assert_eq!(m.lifted.len(), m.elements.len());
            for p in &m.lifted {
                assert!(g.is_automorphism(p), "{c}");
            }
        }
    }

    #[test]
    fn m1_checks() {
        let checks = m1_diagram_checks();
        assert_eq!(checks[0].symmetry_order, 2);
        assert_eq!(checks[1].symmetry_order, 6);
        assert_eq!(checks[1].symmetry_group, GroupName::S3);
        for c in &checks {
            assert!(c.opposite_bridge_colors);
            assert!(c.gamma_matches_published, "{}", c.name);
        }
    }
}
