use cliffgrad::ga::VecN;
use cliffgrad::reflect::build_mirror_chain;
use cliffgrad::simplex::{mean_ratio, mean_ratio_via_quotient, secant_ratio, SecantHyperplane};
use cliffgrad::{SampledSimplex, Simplex};
use proptest::prelude::*;

/// Vertices and one value per vertex for a reasonably shaped simplex.
fn sampled(n: usize) -> impl Strategy<Value = (Simplex, Vec<f64>)> {
    (
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), n + 1),
        prop::collection::vec(-2.0f64..2.0, n + 1),
    )
        .prop_map(|(vs, vals)| (Simplex::new(vs.into_iter().map(VecN::new).collect()).unwrap(), vals))
        .prop_filter("well shaped", |(s, _)| {
            let nf: f64 = (1..=s.dim()).map(|k| k as f64).product();
            s.tau().abs() * nf >= 1e-3 * s.diameter().powi(s.dim() as i32)
        })
}

fn any_dim(lo: usize, hi: usize) -> impl Strategy<Value = (Simplex, Vec<f64>)> {
    (lo..=hi).prop_flat_map(sampled)
}

fn r_f(s: &Simplex, vals: &[f64]) -> VecN {
    secant_ratio(&SampledSimplex::tabulated(s.clone(), vals.to_vec()).unwrap()).unwrap()
}

fn tol(v: &VecN) -> f64 {
    1e-10 * v.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn secant_plane_interpolates((s, vals) in any_dim(1, 6)) {
        let sampled = SampledSimplex::tabulated(s, vals.clone()).unwrap();
        let plane = SecantHyperplane::secant(&sampled).unwrap();
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!(plane.max_vertex_residual(&sampled).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn secant_ratio_ignores_vertex_order((s, vals) in any_dim(2, 4), seed in any::<u64>()) {
        let n = s.dim();
        let mut order: Vec<usize> = (0..=n).collect();
        let mut x = seed;
        for i in (1..order.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let base = r_f(&s, &vals);
        let p = s.permuted(&order).unwrap();
        let pv: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
        prop_assert!(r_f(&p, &pv).distance(&base) <= tol(&base));
    }

    #[test]
    fn transposition_flips_orientation((s, _) in any_dim(1, 6)) {
        let n = s.dim();
        let mut order: Vec<usize> = (0..=n).collect();
        order.swap(0, n);
        let p = s.permuted(&order).unwrap();
        prop_assert!((p.tau() + s.tau()).abs() <= 1e-12 * s.diameter().powi(n as i32));
    }

    #[test]
    fn ratios_scale_inversely((s, vals) in any_dim(1, 5), k in 0.01f64..100.0, shift in -3.0f64..3.0) {
        let moved = Simplex::new(
            s.vertices().iter().map(|v| VecN::new(v.components().iter().map(|x| k * x + shift).collect())).collect(),
        ).unwrap();
        let want = r_f(&s, &vals).scale(1.0 / k);
        prop_assert!(r_f(&moved, &vals).distance(&want) <= 1e-9 * want.norm().max(1.0));
    }

    #[test]
    fn mirror_chain_geometry((s, _) in any_dim(2, 6)) {
        let chain = build_mirror_chain(&s).unwrap();
        prop_assert!(chain.orthogonality_defect() <= 1e-10);
        prop_assert!(chain.hyperoctahedron_defect().unwrap() <= 1e-9);
        prop_assert!(chain.product_wedge_defect().unwrap() <= 1e-9);
        prop_assert!(chain.equidistance_defect() <= 1e-10);
        for i in 2..s.dim() {
            prop_assert!(chain.telescopic_defect(i).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn mean_ratio_routes_agree((s, vals) in any_dim(1, 6), extra in prop::collection::vec(-2.0f64..2.0, 5)) {
        let n = s.dim();
        let chain = build_mirror_chain(&s).unwrap();
        let sampled = SampledSimplex::with_mirror(s, vals, chain, extra[..n - 1].to_vec()).unwrap();
        let sum = mean_ratio(&sampled).unwrap();
        let (quot, residual) = mean_ratio_via_quotient(&sampled).unwrap();
        prop_assert!(sum.distance(&quot) <= 1e-9 * sum.norm().max(1.0));
        prop_assert!(residual <= 1e-10 * sum.norm().max(1.0));
    }

    #[test]
    fn linear_data_is_reproduced((s, _) in any_dim(1, 6), g in prop::collection::vec(-5.0f64..5.0, 6), c in -1.0f64..1.0) {
        let n = s.dim();
        let g = VecN::new(g[..n].to_vec());
        let f = |p: &VecN| Ok(g.dot(p).unwrap() + c);
        let sampled = SampledSimplex::from_fn(s.clone(), f).unwrap();
        prop_assert!(secant_ratio(&sampled).unwrap().distance(&g) <= 1e-10 * g.norm().max(1.0));
        prop_assert!(mean_ratio(&sampled).unwrap().distance(&g) <= 1e-10 * g.norm().max(1.0));
    }
}
