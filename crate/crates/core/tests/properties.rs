use bilms_core::gradients::{bc_partial, grad};
use bilms_core::harness::{compare_trajectories, run_experiment};
use bilms_core::{Algorithm, Bicomplex, BicomplexVector, ExperimentConfig, FdConfig, LmsFilter, PartialKind};
use proptest::prelude::*;

fn bc() -> impl Strategy<Value = Bicomplex> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(|c| Bicomplex::from_coords(c).unwrap())
}

fn close(a: Bicomplex, b: Bicomplex, tol: f64) -> bool {
    (a - b).norm_euclid() <= tol * (1.0 + a.norm_euclid().max(b.norm_euclid()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompositions_track_native_rules(seed in 0u64..1_000, taps in 1usize..6) {
        let cfg = ExperimentConfig { noise_std: 0.1, ..ExperimentConfig::new(Algorithm::Blms1, taps, 0.01, 200, seed) };
        for (a, b) in [
            (Algorithm::Blms1, Algorithm::Blms1Split),
            (Algorithm::Blms1, Algorithm::Blms1Cart),
            (Algorithm::Blms2, Algorithm::Blms2Split),
            (Algorithm::Blms2, Algorithm::Blms2Cart),
        ] {
            let dev = compare_trajectories(&cfg, a, b).unwrap();
            prop_assert!(dev <= 1e-10, "{a} vs {b}: {dev:e}");
        }
    }

    #[test]
    fn same_seed_same_curve(seed in any::<u64>(), alg in prop::sample::select(Algorithm::ALL.to_vec())) {
        let cfg = ExperimentConfig { noise_std: 0.05, ..ExperimentConfig::new(alg, 3, 0.01, 50, seed) };
        prop_assert_eq!(run_experiment(&cfg).unwrap().to_csv(), run_experiment(&cfg).unwrap().to_csv());
    }

    #[test]
    fn zero_error_leaves_weights_fixed(w in prop::collection::vec(bc(), 1..5), x in prop::collection::vec(bc(), 5)) {
        let n = w.len();
        let w = BicomplexVector::new(w).unwrap();
        let x = BicomplexVector::new(x[..n].to_vec()).unwrap();
        for alg in [Algorithm::Blms1, Algorithm::Blms2] {
            let mut f = LmsFilter::new(alg, w.clone(), 0.1).unwrap();
            let d = bilms_core::linalg::dot(&w, &x).unwrap();
            let rec = f.step(&x, d).unwrap();
            prop_assert!(rec.sq_error < 1e-20);
            prop_assert!(f.weights().sub(&w).unwrap().norm_sqr() < 1e-20);
        }
    }

    #[test]
    fn partials_are_linear(z in bc(), a in bc(), b in bc()) {
        let cfg = FdConfig::default();
        for kind in PartialKind::ALL {
            let f = |v: Bicomplex| a * v;
            let g = |v: Bicomplex| b * v.conj_star();
            let lhs = bc_partial(|v| f(v) + g(v), z, kind, &cfg).unwrap();
            let rhs = bc_partial(f, z, kind, &cfg).unwrap() + bc_partial(g, z, kind, &cfg).unwrap();
            prop_assert!(close(lhs, rhs, 1e-8));
        }
    }

    #[test]
    fn gradient_of_separable_sum_is_componentwise(z in prop::collection::vec(bc(), 1..4)) {
        let cfg = FdConfig::default();
        let v = BicomplexVector::new(z.clone()).unwrap();
        let g = grad(|p: &[Bicomplex]| p.iter().map(|q| *q * *q).sum(), &v, PartialKind::Z, &cfg).unwrap();
        for (k, zk) in z.iter().enumerate() {
            let single = bc_partial(|q| q * q, *zk, PartialKind::Z, &cfg).unwrap();
            prop_assert!(close(g[k], single, 1e-8));
        }
    }
}
