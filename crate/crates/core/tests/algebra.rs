use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use octad_core::bipartitions::{
    bp_add, bp_dot, bp_h, build_phi, isometry_to_perm, perm_to_isometry, Bipartition, Perm8,
};
use octad_core::diagrams::{
    admissible_moves, apply_move, class_label, s4_apply, Parity, Perm4, ThetaDiagram,
};
use octad_core::f2core::{arf, dot, F2Vector, Isometry, QuadraticFunction};
use octad_core::geometry::linalg::det4;
use octad_core::geometry::{coplanar, triple_link, ProjPoint};

fn vector() -> impl Strategy<Value = F2Vector> {
    (0u8..64).prop_map(|b| F2Vector::new(b).unwrap())
}

fn quadratic() -> impl Strategy<Value = QuadraticFunction> {
    (0u8..64).prop_map(QuadraticFunction::from_basis_values)
}

fn even_quadratic() -> impl Strategy<Value = QuadraticFunction> {
    quadratic().prop_filter("even", |q| arf(q) == 0)
}

fn perm8() -> impl Strategy<Value = Perm8> {
    Just((0u8..8).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm8::new(v.try_into().unwrap()).unwrap())
}

fn bipartition() -> impl Strategy<Value = Bipartition> {
    (0u8..64).prop_map(Bipartition::from_coords)
}

fn isometry() -> impl Strategy<Value = Isometry> {
    prop::collection::vec(vector().prop_filter("nonzero", |v| !v.is_zero()), 0..12).prop_map(|vs| {
        vs.iter()
            .fold(Isometry::identity(), |g, &v| g.compose(&Isometry::transvection(v)))
    })
}

/// Intersection number from coordinates: sum of a_i(u) b_i(v) + b_i(u) a_i(v).
fn dot_oracle(u: F2Vector, v: F2Vector) -> u8 {
    let (x, y) = (u.coords(), v.coords());
    (0..3).map(|i| x[i] * y[i + 3] + x[i + 3] * y[i]).sum::<u8>() % 2
}

fn members(x: Bipartition) -> Vec<u8> {
    x.labels()
}

proptest! {
    #[test]
    fn dot_matches_coordinates(u in vector(), v in vector()) {
        prop_assert_eq!(dot(u, v), dot_oracle(u, v));
        prop_assert_eq!(dot(u, u), 0);
    }

    #[test]
    fn quadratic_functions_refine_the_pairing(q in quadratic(), u in vector(), v in vector()) {
        prop_assert_eq!(q.eval(u + v), (q.eval(u) + q.eval(v) + dot(u, v)) % 2);
        let w = q.difference(&q.shifted(u));
        prop_assert_eq!(w, u);
    }

    #[test]
    fn arf_is_the_majority_value(q in quadratic()) {
        let zeros = F2Vector::all().filter(|&v| q.eval(v) == 0).count();
        prop_assert_eq!(zeros, if arf(&q) == 0 { 36 } else { 28 });
        let m = q.matrix();
        prop_assert_eq!(arf(&q), (0..3).map(|i| m[0][i] * m[1][i]).sum::<u8>() % 2);
    }

    #[test]
    fn transvection_products_are_isometries(g in isometry(), u in vector(), v in vector()) {
        prop_assert_eq!(dot(g.apply(u), g.apply(v)), dot(u, v));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert_eq!(g.apply(u + v), g.apply(u) + g.apply(v));
    }

    #[test]
    fn bipartition_forms_count_common_labels(x in bipartition(), y in bipartition()) {
        let common = members(x).iter().filter(|l| members(y).contains(l)).count();
        prop_assert_eq!(bp_dot(x, y) as usize, common % 2);
        prop_assert_eq!(bp_h(x) as usize, (members(x).len() / 2) % 2);
        prop_assert!(matches!(members(bp_add(x, y)).len(), 0 | 2 | 4));
    }

    #[test]
    fn relabeling_preserves_bipartition_structure(p in perm8(), x in bipartition(), y in bipartition()) {
        prop_assert_eq!(x.permuted(&p).size(), x.size());
        prop_assert_eq!(bp_dot(x.permuted(&p), y.permuted(&p)), bp_dot(x, y));
        prop_assert_eq!(bp_add(x, y).permuted(&p), bp_add(x.permuted(&p), y.permuted(&p)));
    }

    #[test]
    fn permutations_act_as_stabilizer_elements(q in even_quadratic(), p in perm8(), x in bipartition()) {
        let phi = build_phi(&q).unwrap();
        let g = perm_to_isometry(&p, &phi);
        prop_assert!(g.preserves(&q));
        prop_assert_eq!(g.apply(phi.apply(x)), phi.apply(x.permuted(&p)));
        prop_assert_eq!(isometry_to_perm(&g, &phi).unwrap(), p);
    }

    #[test]
    fn class_is_an_s4_invariant(bits in 0u8..64, images in Just(vec![0u8, 1, 2, 3]).prop_shuffle()) {
        let d = ThetaDiagram::new(QuadraticFunction::from_basis_values(bits));
        let sigma = Perm4::new(images.try_into().unwrap()).unwrap();
        let e = s4_apply(&sigma, &d);
        prop_assert_eq!(class_label(&e), class_label(&d));
        let white = |d: &ThetaDiagram| {
            let mut o = d.oval_colors().to_vec();
            o.sort_unstable();
            let mut b = d.bridge_colors().to_vec();
            b.sort_unstable();
            (o, b)
        };
        prop_assert_eq!(white(&e), white(&d));
        prop_assert_eq!(d.parity() == Parity::Even, arf(d.quadratic()) == 0);
    }

    #[test]
    fn moves_are_involutions(q in even_quadratic()) {
        let d = ThetaDiagram::new(q);
        for mv in admissible_moves(&d) {
            let e = apply_move(&d, mv).unwrap();
            prop_assert_eq!(e.parity(), Parity::Even);
            prop_assert_eq!(apply_move(&e, mv).unwrap(), d);
        }
    }
}

fn point() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-9i64..=9).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn matrix() -> impl Strategy<Value = [[i64; 4]; 4]> {
    prop::array::uniform4(prop::array::uniform4(-4i64..=4))
}

fn transform(m: &[[i64; 4]; 4], p: &[i64; 4]) -> [i64; 4] {
    std::array::from_fn(|i| (0..4).map(|j| m[i][j] * p[j]).sum())
}

fn det_sign(m: &[[i64; 4]; 4]) -> i8 {
    let rows = m.map(|r| r.map(BigInt::from));
    let d = det4([&rows[0], &rows[1], &rows[2], &rows[3]]);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

proptest! {
    #[test]
    fn points_ignore_rescaling(v in point(), k in prop::sample::select(vec![-5i64, -2, -1, 2, 3, 7])) {
        let p = ProjPoint::new(v).unwrap();
        prop_assert_eq!(ProjPoint::new(v.map(|x| x * k)).unwrap(), p.clone());
        prop_assert_eq!(p.mirrored().mirrored(), p);
    }

    #[test]
    fn triple_link_ignores_order(pts in prop::array::uniform6(point())) {
        let p: Vec<ProjPoint> = pts.iter().map(|v| ProjPoint::new(*v).unwrap()).collect();
        let t = triple_link((&p[0], &p[1]), (&p[2], &p[3]), (&p[4], &p[5]));
        prop_assume!(t.is_ok());
        let t = t.unwrap();
        prop_assert_eq!(triple_link((&p[1], &p[0]), (&p[2], &p[3]), (&p[4], &p[5])).unwrap(), t);
        prop_assert_eq!(triple_link((&p[2], &p[3]), (&p[0], &p[1]), (&p[4], &p[5])).unwrap(), t);
        prop_assert_eq!(triple_link((&p[4], &p[5]), (&p[3], &p[2]), (&p[0], &p[1])).unwrap(), t);
    }

    #[test]
    fn triple_link_follows_orientation(pts in prop::array::uniform6(point()), m in matrix()) {
        let s = det_sign(&m);
        prop_assume!(s != 0);
        let p: Vec<ProjPoint> = pts.iter().map(|v| ProjPoint::new(*v).unwrap()).collect();
        let q: Vec<ProjPoint> = pts.iter().map(|v| ProjPoint::new(transform(&m, v)).unwrap()).collect();
        let t = triple_link((&p[0], &p[1]), (&p[2], &p[3]), (&p[4], &p[5]));
        prop_assume!(t.is_ok());
        let u = triple_link((&q[0], &q[1]), (&q[2], &q[3]), (&q[4], &q[5])).unwrap();
        prop_assert_eq!(u, s * t.unwrap());
        prop_assert_eq!(coplanar(&p[0], &p[1], &p[2], &p[3]), coplanar(&q[0], &q[1], &q[2], &q[3]));
    }
}
