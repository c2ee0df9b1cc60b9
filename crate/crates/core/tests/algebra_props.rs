use cliffgrad::ga::{
    det_via_quotient, det_via_scalar_product, graded_anticommutator, graded_commutator, lu_determinant,
    pseudoscalar, reorder_sign, Blade, Multivector, VecN,
};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    -1.0f64..1.0
}

fn mv(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(coeff(), 1 << n).prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = VecN> {
    prop::collection::vec(coeff(), n).prop_map(VecN::new)
}

fn vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<VecN>> {
    prop::collection::vec(vector(n), k)
}

fn close(a: &Multivector, b: &Multivector, scale: f64) -> bool {
    a.max_abs_diff(b) <= 1e-12 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_associative((a, b, c) in (1usize..=6).prop_flat_map(|n| (mv(n), mv(n), mv(n)))) {
        let l = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
        let r = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
        prop_assert!(close(&l, &r, a.norm() * b.norm() * c.norm()));
    }

    #[test]
    fn product_distributes((a, b, c) in (1usize..=5).prop_flat_map(|n| (mv(n), mv(n), mv(n)))) {
        let l = a.geometric_product(&b.try_add(&c).unwrap()).unwrap();
        let r = a.geometric_product(&b).unwrap().try_add(&a.geometric_product(&c).unwrap()).unwrap();
        prop_assert!(close(&l, &r, a.norm() * (b.norm() + c.norm())));
    }

    #[test]
    fn vector_product_splits((u, v) in (1usize..=6).prop_flat_map(|n| (vector(n), vector(n)))) {
        let n = u.dim();
        let uv = u.to_multivector().unwrap().geometric_product(&v.to_multivector().unwrap()).unwrap();
        prop_assert!((uv.scalar_part() - u.dot(&v).unwrap()).abs() <= 1e-12);
        let w = u.to_multivector().unwrap().wedge(&v.to_multivector().unwrap()).unwrap();
        prop_assert!(close(&uv.grade(2), &w, 1.0));
        prop_assert!(uv.try_sub(&uv.grade(0)).unwrap().try_sub(&w).unwrap().norm() <= 1e-12);
        // vv = |v|²
        let vv = v.to_multivector().unwrap().geometric_product(&v.to_multivector().unwrap()).unwrap();
        prop_assert!(close(&vv, &Multivector::scalar(n, v.norm_sq()).unwrap(), 1.0));
    }

    #[test]
    fn reverse_is_an_anti_automorphism((a, b) in (1usize..=5).prop_flat_map(|n| (mv(n), mv(n)))) {
        let l = a.geometric_product(&b).unwrap().reverse();
        let r = b.reverse().geometric_product(&a.reverse()).unwrap();
        prop_assert!(close(&l, &r, a.norm() * b.norm()));
    }

    #[test]
    fn pseudoscalar_commutation((n, k, a) in (1usize..=6).prop_flat_map(|n| (Just(n), 0..=n, mv(n)))) {
        let ak = a.grade(k);
        let i = pseudoscalar(n).unwrap().value().clone();
        let sign = if k * (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let l = ak.geometric_product(&i).unwrap();
        let r = i.geometric_product(&ak).unwrap().scale(sign);
        prop_assert!(close(&l, &r, ak.norm()));
        // duals of k-vectors are (n−k)-vectors
        prop_assert!(l.residual_norm(n - k) <= 1e-12 * ak.norm().max(1.0));
    }

    #[test]
    fn blades_invert((n, fs) in (1usize..=6).prop_flat_map(|n| (Just(n), (0..=n).prop_flat_map(move |k| vectors(n, k))))) {
        let b = Blade::from_factors(n, fs).unwrap();
        prop_assume!(!b.is_degenerate() && b.value().norm() > 1e-4);
        let inv = b.inverse().unwrap();
        let one = Multivector::scalar(n, 1.0).unwrap();
        prop_assert!(close(&b.value().geometric_product(&inv).unwrap(), &one, 1.0));
        prop_assert!(close(&inv.geometric_product(b.value()).unwrap(), &one, 1.0));
        let (sq, residual) = b.square_by_product();
        prop_assert!((sq - b.square()).abs() <= 1e-12 * sq.abs().max(1.0));
        prop_assert!(residual <= 1e-12 * sq.abs().max(1.0));
    }

    #[test]
    fn graded_products_split_vb((n, v, fs) in (2usize..=6).prop_flat_map(|n| (Just(n), vector(n), (1..n).prop_flat_map(move |k| vectors(n, k))))) {
        let b = Blade::from_factors(n, fs).unwrap();
        let k = b.grade();
        let inner = graded_commutator(&v, &b).unwrap();
        let outer = graded_anticommutator(&v, &b).unwrap();
        let vb = v.to_multivector().unwrap().geometric_product(b.value()).unwrap();
        let scale = v.norm() * b.value().norm();
        prop_assert!(close(&inner.try_add(&outer).unwrap(), &vb, scale));
        prop_assert!(inner.residual_norm(k - 1) <= 1e-12 * scale.max(1.0));
        prop_assert!(outer.residual_norm(k + 1) <= 1e-12 * scale.max(1.0));
        let wedge = v.to_multivector().unwrap().wedge(b.value()).unwrap();
        prop_assert!(close(&outer, &wedge, scale));
    }

    #[test]
    fn determinant_routes_agree(rows in (1usize..=6).prop_flat_map(|k| vectors(k, k))) {
        let lu = lu_determinant(&rows).unwrap();
        let hadamard: f64 = rows.iter().map(VecN::norm).product();
        prop_assert!((det_via_quotient(&rows).unwrap() - lu).abs() <= 1e-12 * hadamard.max(1.0));
        prop_assert!((det_via_scalar_product(&rows).unwrap() - lu).abs() <= 1e-12 * hadamard.max(1.0));
    }

    #[test]
    fn reorder_sign_matches_transposition_count(a in 0usize..64, b in 0usize..64) {
        let mut swaps = 0;
        for bit in 0..6 {
            if b >> bit & 1 == 1 {
                swaps += (a >> (bit + 1)).count_ones();
            }
        }
        prop_assert_eq!(reorder_sign(a, b), if swaps % 2 == 0 { 1.0 } else { -1.0 });
    }
}
