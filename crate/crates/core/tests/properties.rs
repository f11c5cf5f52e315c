//! Algebraic invariants checked on random inputs.

use proptest::prelude::*;
use qwh_core::coherent::{c_series, uncertainty_global};
use qwh_core::fock::Operators;
use qwh_core::liealg::{LieElement, QuatWeyl, RealWeyl};
use qwh_core::{Axis, QMat, QVec, Quat};

fn coord() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn quat() -> impl Strategy<Value = Quat> {
    (coord(), coord(), coord(), coord()).prop_map(|(w, x, y, z)| Quat::new(w, x, y, z))
}

fn small_quat() -> impl Strategy<Value = Quat> {
    quat().prop_map(|q| q.scale(0.5))
}

fn axis() -> impl Strategy<Value = Axis> {
    (coord(), coord(), coord())
        .prop_filter("away from zero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
        .prop_map(|(x, y, z)| Axis::normalize(x, y, z).unwrap())
}

fn qvec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(quat(), n).prop_map(QVec::new)
}

fn qmat(n: usize) -> impl Strategy<Value = QMat> {
    prop::collection::vec(quat(), n * n).prop_map(move |v| QMat::from_fn(n, |a, b| v[a * n + b]))
}

fn real_weyl() -> impl Strategy<Value = RealWeyl<f64>> {
    prop::collection::vec(coord(), 7).prop_map(|c| RealWeyl::new([c[0], c[1], c[2]], c[3], [c[4], c[5], c[6]]))
}

fn quat_weyl() -> impl Strategy<Value = QuatWeyl<f64>> {
    (quat(), quat(), quat()).prop_map(|(x, y, z)| QuatWeyl::new(x, y, z))
}

fn scale_tol(a: f64, b: f64) -> f64 {
    1e-13 * (1.0 + a) * (1.0 + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conjugate_reverses_products(p in quat(), q in quat()) {
        prop_assert!((p * q).conj().dist(q.conj() * p.conj()) <= scale_tol(p.norm(), q.norm()));
    }

    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= scale_tol(p.norm(), q.norm()));
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(p in quat(), q in quat()) {
        let lhs = (p * q).to_matrix2();
        let rhs = p.to_matrix2() * q.to_matrix2();
        prop_assert!(lhs.max_abs_diff(&rhs) <= scale_tol(p.norm(), q.norm()));
        prop_assert!((p + q).to_matrix2().max_abs_diff(&(p.to_matrix2() + q.to_matrix2())) <= 1e-14);
    }

    #[test]
    fn polar_round_trip(q in quat()) {
        prop_assert!(q.polar().quaternion().dist(q) <= 1e-12);
    }

    #[test]
    fn slice_round_trip(q in quat()) {
        let s = q.slice();
        prop_assert!(s.y >= 0.0);
        prop_assert!(s.quaternion().dist(q) <= 1e-12);
        prop_assert!(q.in_slice(s.axis, 1e-12));
    }

    #[test]
    fn positive_slice_representative_is_unique(x in coord(), y in 0.01..3.0f64, u in axis()) {
        let s = u.slice_point(x, y).slice();
        prop_assert!((s.x - x).abs() <= 1e-14 && (s.y - y).abs() <= 1e-14);
        prop_assert!(s.axis.quaternion().dist(u.quaternion()) <= 1e-13);
    }

    #[test]
    fn inner_product_conjugate_symmetry(a in qvec(5), b in qvec(5)) {
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        prop_assert!(ab.conj().dist(ba) <= 1e-12);
    }

    #[test]
    fn inner_product_is_right_linear(a in qvec(5), b in qvec(5), q in quat()) {
        let lhs = a.inner(&b.right_scale(q)).unwrap();
        let rhs = a.inner(&b).unwrap() * q;
        prop_assert!(lhs.dist(rhs) <= 1e-11);
        let lhs = a.right_scale(q).inner(&b).unwrap();
        let rhs = q.conj() * a.inner(&b).unwrap();
        prop_assert!(lhs.dist(rhs) <= 1e-11);
    }

    #[test]
    fn inner_product_is_positive(a in qvec(5)) {
        let aa = a.inner(&a).unwrap();
        prop_assert!(aa.w >= 0.0);
        prop_assert!(aa.im_norm() <= 1e-14 * (1.0 + aa.w));
    }

    #[test]
    fn left_scaling_scales_norm(a in qvec(6), q in quat()) {
        let n = a.left_scale(q).norm();
        prop_assert!((n - q.norm() * a.norm()).abs() <= 1e-12 * (1.0 + n));
    }

    #[test]
    fn real_scalars_act_the_same_on_both_sides(a in qvec(6), r in coord()) {
        let s = Quat::from_real(r);
        prop_assert_eq!(a.left_scale(s), a.right_scale(s));
    }

    #[test]
    fn left_scaling_is_additive(a in qvec(4), p in quat(), q in quat()) {
        let lhs = a.left_scale(p + q);
        let rhs = a.left_scale(p).add(&a.left_scale(q)).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn operators_are_right_linear(m in qmat(4), v in qvec(4), q in quat()) {
        let lhs = m.apply(&v.right_scale(q)).unwrap();
        let rhs = m.apply(&v).unwrap().right_scale(q);
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-10);
    }

    #[test]
    fn adjoint_moves_across_inner_product(m in qmat(4), u in qvec(4), v in qvec(4)) {
        let lhs = u.inner(&m.apply(&v).unwrap()).unwrap();
        let rhs = m.adjoint().apply(&u).unwrap().inner(&v).unwrap();
        prop_assert!(lhs.dist(rhs) <= 1e-10);
    }

    #[test]
    fn real_weyl_bracket_is_antisymmetric(a in real_weyl(), b in real_weyl()) {
        let s = a.bracket(&b).add(&b.bracket(&a));
        prop_assert!(s.distance(&RealWeyl::zero()) <= 1e-13);
        prop_assert!(a.bracket(&a).distance(&RealWeyl::zero()) <= 1e-13);
    }

    #[test]
    fn quat_weyl_bracket_is_antisymmetric(a in quat_weyl(), b in quat_weyl()) {
        let s = a.bracket(&b).add(&b.bracket(&a));
        prop_assert!(s.distance(&QuatWeyl::zero()) <= 1e-13);
    }

    #[test]
    fn c_series_is_imaginary_and_bounded(q in small_quat(), u in axis()) {
        let c = c_series(q, u, f64::EPSILON).unwrap();
        prop_assert!(c.w.abs() <= 1e-14);
        prop_assert!(c.norm() <= 1.0 + 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uncertainty_excess_is_bounded(q in small_quat(), u in axis()) {
        let ops = Operators::<f64>::new(48).unwrap();
        let r = uncertainty_global(&ops, q, u).unwrap();
        prop_assert!(r.excess >= -1e-12);
        prop_assert!(r.excess <= q.norm_sqr() + 1e-12);
        prop_assert!((r.excess - r.excess_series).abs() <= 1e-12);
        prop_assert!(r.product + 1e-12 >= r.lower_bound);
    }
}
