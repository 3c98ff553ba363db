use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supertree::constructors::{
    double_star, f_tree, hyperstar, path, random_supertree, random_tree, star, tree_power,
};
use supertree::spectral::{
    double_star_power_radius, eigen_residual, f_tree_power_radius, graph_spectral_radius,
    power_formula_radius, power_iteration, spectral_radius, tensor_apply, PowerIteration,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use supertree::Hypergraph;

mod common;
use common::{dense_tree_radius, tensor_apply_by_definition};

#[test]
fn tensor_apply_matches_the_tensor_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, k) in [(3, 2), (4, 3), (3, 4), (2, 5)] {
        let h = random_supertree(m, k, &mut rng).unwrap();
        let x: Vec<f64> = (0..h.n()).map(|i| 0.5 + i as f64 / 7.0).collect();
        let fast = tensor_apply(&h, &x).unwrap();
        let slow = tensor_apply_by_definition(&h, &x);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn graph_radius_matches_dense_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut trees = vec![path(7).unwrap(), star(6).unwrap(), double_star(2, 3).unwrap(), f_tree(8).unwrap()];
    trees.extend((0..10).map(|i| random_tree(3 + i, &mut rng).unwrap()));
    for t in &trees {
        let dense = dense_tree_radius(t);
        assert!((graph_spectral_radius(t).unwrap() - dense).abs() < 1e-9);
        assert!((spectral_radius(&t.to_hypergraph()).unwrap() - dense).abs() < 1e-9);
    }
}

#[test]
fn quartic_closed_forms_match_dense_eigensolver() {
    for m in 4..=12 {
        let ds = dense_tree_radius(&double_star(2, m - 3).unwrap());
        let f = dense_tree_radius(&f_tree(m + 1).unwrap());
        assert!((double_star_power_radius(m, 2).unwrap() - ds).abs() < 1e-10);
        assert!((f_tree_power_radius(m, 2).unwrap() - f).abs() < 1e-10);
        for k in 3..=5 {
            let e = 2.0 / k as f64;
            assert!((double_star_power_radius(m, k).unwrap() - ds.powf(e)).abs() < 1e-10);
            assert!((f_tree_power_radius(m, k).unwrap() - f.powf(e)).abs() < 1e-10);
        }
    }
}

#[test]
fn quartic_roots_satisfy_their_characteristic_equations() {
    for m in 4..=30 {
        let m_f = m as f64;
        // characteristic polynomials of S(2, m-3) and F_{m+1}, divided by
        // powers of x, with y = x^2
        let y = double_star_power_radius(m, 2).unwrap().powi(2);
        assert!((y * y - m_f * y + 2.0 * (m_f - 3.0)).abs() <= 1e-10 * m_f * m_f);
        let y = f_tree_power_radius(m, 2).unwrap().powi(2);
        assert!((y * y - (m_f - 1.0) * y + (m_f - 4.0)).abs() <= 1e-10 * m_f * m_f);
    }
}

#[test]
fn single_edges_and_hyperstars() {
    for k in 2..=5 {
        let e = Hypergraph::new(k, k, vec![(0..k).collect()]).unwrap();
        let pair = power_iteration(&e, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!((pair.rho - 1.0).abs() < 1e-12);
        assert_eq!(pair.iterations, 1);
        for m in 2..=8 {
            let rho = spectral_radius(&hyperstar(m, k).unwrap()).unwrap();
            assert!((rho - (m as f64).powf(1.0 / k as f64)).abs() < 1e-8);
        }
    }
}

#[test]
fn non_convergence_is_reported() {
    let h = tree_power(&path(9).unwrap(), 3).unwrap();
    assert!(matches!(
        power_iteration(&h, 1e-14, 3),
        Err(supertree::Error::NonConvergence { iterations: 3, .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_apply_is_homogeneous(m in 1usize..7, k in 2usize..5, c in 0.1f64..10.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_supertree(m, k, &mut rng).unwrap();
        let x: Vec<f64> = (0..h.n()).map(|i| 1.0 + (i % 3) as f64).collect();
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let a = tensor_apply(&h, &x).unwrap();
        let b = tensor_apply(&h, &cx).unwrap();
        let scale = c.powi(k as i32 - 1);
        for (ai, bi) in a.iter().zip(&b) {
            prop_assert!((bi - scale * ai).abs() <= 1e-10 * bi.abs().max(1.0));
        }
    }

    #[test]
    fn every_iterate_brackets_the_radius(m in 1usize..7, k in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_supertree(m, k, &mut rng).unwrap();
        let rho = spectral_radius(&h).unwrap();
        let mut it = PowerIteration::new(&h).unwrap();
        for _ in 0..40 {
            let b = it.evaluate();
            prop_assert!(b.low <= rho + 1e-9 && rho <= b.high + 1e-9, "{:?} vs {}", b, rho);
            it.advance();
        }
    }

    #[test]
    fn principal_pair_is_positive_and_accurate(m in 1usize..8, k in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_supertree(m, k, &mut rng).unwrap();
        let pair = power_iteration(&h, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(pair.x.iter().all(|&v| v > 0.0));
        prop_assert!(pair.rho >= 1.0 - 1e-12);
        prop_assert!(pair.rho <= m as f64);
        prop_assert!(eigen_residual(&h, pair.rho, &pair.x).unwrap() <= 1e-8);
        let norm: f64 = pair.x.iter().map(|v| v.powi(k as i32)).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tree_powers_follow_the_base_tree(n in 2usize..11, k in 3usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(n, &mut rng).unwrap();
        let expected = dense_tree_radius(&t).powf(2.0 / k as f64);
        let rho = spectral_radius(&tree_power(&t, k).unwrap()).unwrap();
        prop_assert!((rho - expected).abs() <= 1e-8);
        prop_assert!((power_formula_radius(&t, k).unwrap() - expected).abs() <= 1e-9);
    }
}
